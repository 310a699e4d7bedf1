#pragma once

// Shared generators for the randomized suites.  Everything is driven by the
// deterministic SplitMix stream so failures are reproducible from a seed.

#include <vector>

#include "qrel/quantale.hpp"
#include "qrel/rng.hpp"

namespace qrel::testing {

inline Rat random_rat(Rng& rng, long max_num = 12, long max_den = 6) {
  return make_rat(static_cast<long>(rng.below(max_num + 1)),
                  static_cast<long>(1 + rng.below(max_den)));
}

inline Rat random_unit_rat(Rng& rng) {
  long den = static_cast<long>(1 + rng.below(8));
  long num = static_cast<long>(rng.below(den + 1));
  return make_rat(num, den);
}

inline StepFunction random_step(Rng& rng, int max_jumps = 4) {
  std::vector<StepFunction::Jump> raw;
  int n = rng.index(max_jumps + 1);
  for (int i = 0; i < n; i++) raw.push_back({random_rat(rng, 8, 4), random_unit_rat(rng)});
  return StepFunction::normalized(std::move(raw));
}

inline QValue random_value(Rng& rng, const QuantaleId& q) {
  switch (q.family()) {
    case Family::bool2:
      return QValue::truth(rng.flip());
    case Family::lawvere:
      if (rng.chance(1, 8)) return QValue::lawvere(XRat::inf());
      return QValue::lawvere(XRat(random_rat(rng)));
    case Family::extended_real: {
      if (rng.chance(1, 10)) return QValue::extended_real(XRat::inf());
      if (rng.chance(1, 10)) return QValue::extended_real(XRat::minus_inf());
      Rat r = random_rat(rng);
      if (rng.flip()) r = -r;
      return QValue::extended_real(XRat(std::move(r)));
    }
    case Family::unit_interval:
      return QValue::unit_interval(q.tnorm(), random_unit_rat(rng));
    case Family::delta:
      return QValue::delta(q.tnorm(), random_step(rng));
  }
  throw Error("unknown family");
}

inline std::vector<QuantaleId> all_quantales() {
  return {QuantaleId::bool2(),
          QuantaleId::lawvere(),
          QuantaleId::extended_real(),
          QuantaleId::unit_interval(TNorm::product),
          QuantaleId::unit_interval(TNorm::minimum),
          QuantaleId::unit_interval(TNorm::lukasiewicz),
          QuantaleId::delta(TNorm::product),
          QuantaleId::delta(TNorm::minimum),
          QuantaleId::delta(TNorm::lukasiewicz)};
}

}  // namespace qrel::testing
