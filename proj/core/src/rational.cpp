#include "qrel/rational.hpp"

#include <cctype>

namespace qrel {

int num_cmp(const XRat& a, const XRat& b) {
  using K = XRat::Kind;
  auto rank = [](K k) { return k == K::neg_inf ? -1 : (k == K::pos_inf ? 1 : 0); };
  int ra = rank(a.kind()), rb = rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra != 0) return 0;
  return cmp(a.value(), b.value()) < 0 ? -1 : (a.value() == b.value() ? 0 : 1);
}

XRat xadd_posinf_dominant(const XRat& a, const XRat& b) {
  if (a.is_pos_inf() || b.is_pos_inf()) return XRat::inf();
  if (a.is_neg_inf() || b.is_neg_inf()) return XRat::minus_inf();
  return XRat(Rat(a.value() + b.value()));
}

XRat truncated_diff(const XRat& z, const XRat& x) {
  if (x.is_pos_inf()) return XRat(Rat(0));
  if (z.is_pos_inf()) return XRat::inf();
  Rat d = z.value() - x.value();
  if (sgn(d) < 0) return XRat(Rat(0));
  return XRat(std::move(d));
}

std::string to_string(const Rat& r) { return r.get_str(); }

std::string to_string(const XRat& x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return to_string(x.value());
}

std::optional<Rat> parse_rat(const std::string& text) {
  if (text.empty()) return std::nullopt;
  // Accept [-]digits[/digits] only; mpq accepts more, so validate first.
  std::size_t i = 0;
  if (text[i] == '-' || text[i] == '+') i++;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) i++, digits++;
  if (digits == 0) return std::nullopt;
  if (i < text.size()) {
    if (text[i] != '/') return std::nullopt;
    i++;
    std::size_t den_digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) i++, den_digits++;
    if (den_digits == 0 || i != text.size()) return std::nullopt;
  }
  Rat r;
  if (r.set_str(text, 10) != 0) return std::nullopt;
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

std::optional<XRat> parse_xrat(const std::string& text) {
  if (text == "inf") return XRat::inf();
  if (text == "-inf") return XRat::minus_inf();
  auto r = parse_rat(text);
  if (!r) return std::nullopt;
  return XRat(std::move(*r));
}

}  // namespace qrel
