#include "qrel/step_function.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qrel/errors.hpp"

namespace qrel {

Rat tnorm_apply(TNorm t, const Rat& a, const Rat& b) {
  switch (t) {
    case TNorm::product:
      return a * b;
    case TNorm::minimum:
      return std::min(a, b);
    case TNorm::lukasiewicz: {
      Rat s = a + b - 1;
      return sgn(s) < 0 ? Rat(0) : s;
    }
  }
  throw Error("unknown t-norm");
}

Rat tnorm_residual(TNorm t, const Rat& x, const Rat& z) {
  switch (t) {
    case TNorm::product:
      if (sgn(x) == 0) return Rat(1);
      return std::min(Rat(1), Rat(z / x));
    case TNorm::minimum:
      return x <= z ? Rat(1) : z;
    case TNorm::lukasiewicz:
      return std::min(Rat(1), Rat(1 - x + z));
  }
  throw Error("unknown t-norm");
}

const char* tnorm_name(TNorm t) {
  switch (t) {
    case TNorm::product:
      return "product";
    case TNorm::minimum:
      return "min";
    case TNorm::lukasiewicz:
      return "lukasiewicz";
  }
  return "?";
}

StepFunction StepFunction::normalized(std::vector<Jump> raw) {
  for (const Jump& j : raw) {
    if (sgn(j.threshold) < 0) throw RangeError("step function threshold must be nonnegative");
    if (sgn(j.level) < 0 || j.level > 1) throw RangeError("step function level must lie in [0,1]");
  }
  std::sort(raw.begin(), raw.end(), [](const Jump& a, const Jump& b) {
    if (a.threshold != b.threshold) return a.threshold < b.threshold;
    return a.level > b.level;
  });
  StepFunction out;
  for (Jump& j : raw) {
    if (sgn(j.level) == 0) continue;
    if (!out.jumps_.empty() && j.level <= out.jumps_.back().level) continue;
    out.jumps_.push_back(std::move(j));
  }
  return out;
}

StepFunction StepFunction::point(const Rat& u, const Rat& p) {
  return normalized({Jump{u, p}});
}

StepFunction StepFunction::one() { return point(Rat(0), Rat(1)); }

Rat StepFunction::eval(const XRat& t) const {
  if (t.is_pos_inf()) return top_level();
  if (t.is_neg_inf()) return Rat(0);
  return [&]() -> Rat {
    const Rat& s = t.value();
    Rat out(0);
    for (const Jump& j : jumps_) {
      if (j.threshold < s)
        out = j.level;
      else
        break;
    }
    return out;
  }();
}

Rat StepFunction::eval_above(const Rat& t) const {
  Rat out(0);
  for (const Jump& j : jumps_) {
    if (j.threshold <= t)
      out = j.level;
    else
      break;
  }
  return out;
}

Rat StepFunction::top_level() const {
  return jumps_.empty() ? Rat(0) : jumps_.back().level;
}

namespace {

std::vector<Rat> merged_thresholds(const StepFunction& a, const StepFunction& b) {
  std::set<Rat> grid;
  for (const auto& j : a.jumps()) grid.insert(j.threshold);
  for (const auto& j : b.jumps()) grid.insert(j.threshold);
  return {grid.begin(), grid.end()};
}

}  // namespace

bool sf_le(const StepFunction& a, const StepFunction& b) {
  for (const Rat& u : merged_thresholds(a, b)) {
    if (a.eval_above(u) > b.eval_above(u)) return false;
  }
  return true;
}

StepFunction sf_sup(const StepFunction& a, const StepFunction& b) {
  std::vector<StepFunction::Jump> raw;
  for (const Rat& u : merged_thresholds(a, b)) {
    raw.push_back({u, std::max(a.eval_above(u), b.eval_above(u))});
  }
  return StepFunction::normalized(std::move(raw));
}

StepFunction sf_inf(const StepFunction& a, const StepFunction& b) {
  std::vector<StepFunction::Jump> raw;
  for (const Rat& u : merged_thresholds(a, b)) {
    raw.push_back({u, std::min(a.eval_above(u), b.eval_above(u))});
  }
  return StepFunction::normalized(std::move(raw));
}

StepFunction sf_convolve(TNorm t, const StepFunction& a, const StepFunction& b) {
  std::vector<StepFunction::Jump> raw;
  raw.reserve(a.jumps().size() * b.jumps().size());
  for (const auto& ja : a.jumps()) {
    for (const auto& jb : b.jumps()) {
      raw.push_back({Rat(ja.threshold + jb.threshold), tnorm_apply(t, ja.level, jb.level)});
    }
  }
  return StepFunction::normalized(std::move(raw));
}

StepFunction sf_residuate(TNorm t, const StepFunction& phi, const StepFunction& chi) {
  // No constraint at all: the residual is the top of the quantale, which for
  // distance distribution functions is the unit k.
  if (phi.is_zero()) return StepFunction::one();

  // g(s) = inf_r phi(r) -> chi(r+s) only changes value when some u_i + s
  // crosses a threshold of chi, so it is piecewise constant (and
  // right-continuous) on the breakpoint grid below.
  std::set<Rat> breakpoints;
  breakpoints.insert(Rat(0));
  for (const auto& jc : chi.jumps()) {
    for (const auto& jp : phi.jumps()) {
      Rat d = jc.threshold - jp.threshold;
      if (sgn(d) >= 0) breakpoints.insert(std::move(d));
    }
  }

  auto g_at = [&](const Rat& s) {
    Rat out(1);
    for (const auto& jp : phi.jumps()) {
      Rat constraint = tnorm_residual(t, jp.level, chi.eval_above(Rat(jp.threshold + s)));
      if (constraint < out) out = std::move(constraint);
    }
    return out;
  };

  // Left-continuous regularization: a raw jump (w, g(w)) denotes value g(w)
  // on (w, next), matching the right-continuity of g.
  std::vector<StepFunction::Jump> raw;
  for (const Rat& w : breakpoints) raw.push_back({w, g_at(w)});
  return StepFunction::normalized(std::move(raw));
}

std::string to_string(const StepFunction& f) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& j : f.jumps()) {
    if (!first) os << ',';
    first = false;
    os << '(' << to_string(j.threshold) << ',' << to_string(j.level) << ')';
  }
  os << ']';
  return os.str();
}

}  // namespace qrel
