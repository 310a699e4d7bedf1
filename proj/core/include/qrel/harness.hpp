#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qrel/continuity.hpp"
#include "qrel/rng.hpp"

namespace qrel {

struct GeneratorConfig {
  std::vector<QuantaleId> quantales;
  int max_carrier = 3;  // |A|, |B|
  int max_target = 3;   // |M|
  int powerset_cap = kDefaultPowersetCap;
  int trials = 1000;
  std::uint64_t seed = 0;
  /// Values to sample entries from; when empty, a default palette per
  /// quantale is used.  Values of other quantales are ignored.
  std::vector<QValue> palette;
};

/// Outcome of verifying one theorem instance.  The conclusion is evaluated
/// only when every hypothesis holds; an instance with all hypotheses true
/// and a false conclusion is a fatal soundness defect, never tolerated.
struct VerificationReport {
  std::vector<std::pair<std::string, bool>> hypotheses;
  std::optional<bool> conclusion;
  std::optional<std::string> skip_reason;
  std::vector<std::string> witnesses;
  double seconds = 0.0;

  bool skipped() const { return skip_reason.has_value(); }
  bool failed() const { return conclusion.has_value() && !*conclusion; }
  bool passed() const { return conclusion.has_value() && *conclusion; }
};

enum class MaxVariant : std::uint8_t {
  right_cocomplete,
  right_bc,
  left_cocomplete,
  left_bc,
};

/// Data of one maximum-theorem instance: modular structured objects A, B, M
/// over one quantale and monad, a bimodule J : A -> B and a map into M
/// (e : B -> M for the right variants, d : A -> M for the left ones).
struct MaxInstance {
  QuantaleId quantale;
  Monad monad;
  ModularSpace a;
  ModularSpace b;
  ModularSpace m;
  VRel j;
  SetMap de;
  std::uint64_t seed = 0;
};

/// Extreme value theorem over boolean modular closure spaces.
struct EvtClosureInstance {
  ModularSpace a;  // modular closure space
  ModularSpace m;  // modular closure space, expected normalised
  VCat b;          // plain ordered set
  VRel j;          // A -> B
  SetMap d;        // A -> M
  std::uint64_t seed = 0;
};

/// Extreme value theorem for extensions into the self-enriched quantale.
struct EvtQuantaleInstance {
  QuantaleId quantale;
  ModularSpace a;  // modular convergence space
  VCat b;
  VRel j;                 // A -> B, expected discrete
  std::vector<QValue> d;  // A -> V
  std::uint64_t seed = 0;
};

/// Classical parametric optimization over finite topologies.
struct BergeInstance {
  PSpace a;
  PSpace b;
  VRel j;              // boolean A -> B
  std::vector<XRat> e; // objective on B
  std::uint64_t seed = 0;
};

enum class InstanceKind : std::uint8_t {
  max_right_cocomplete,
  max_right_bc,
  max_left_cocomplete,
  max_left_bc,
  evt_closure,
  evt_quantale,
  berge,
};

using TheoremInstance =
    std::variant<MaxInstance, EvtClosureInstance, EvtQuantaleInstance, BergeInstance>;

/// Deterministic instance sampling: carriers, homs, structures and
/// relations come from a per-quantale palette and are repaired to
/// lawfulness (reflexive and transitive closure for homs, bimodule closure
/// for relations, join-generated closure structures).  Two calls with the
/// same arguments agree.
TheoremInstance gen_instance(const GeneratorConfig& cfg, InstanceKind kind,
                             std::uint64_t trial);

VerificationReport verify_max_theorem(MaxVariant variant, const MaxInstance& inst);
VerificationReport verify_evt_closure(const EvtClosureInstance& inst);
VerificationReport verify_evt_quantale(const EvtQuantaleInstance& inst);
VerificationReport berge_classical(const BergeInstance& inst);

/// Compactness of a subset of a closure space through the
/// finite-intersection-property definition over families of closed sets.
/// Exhaustive over all subfamilies when few distinct closed sets exist;
/// beyond that the family premise is folded through the running
/// intersection, which is equivalent because intersections only shrink.
bool compact_subset_check(const PSpace& space, unsigned subset_mask);

/// Up-directedness of a finite set of quantale values: nonempty, and every
/// pair admits an upper bound inside the set.
bool up_directed_values(const QuantaleId& q, const std::vector<QValue>& values);

struct DeltaProbeEntry {
  Rat level;          // the staircase cap i
  Rat residual_at_inf;
  bool bounded;       // residual(inf) <= i and < 1
};

struct DeltaProbeReport {
  bool up_directed = false;
  bool identity_holds = false;  // join of residuals equals the unit
  std::optional<QValue> lhs;
  std::vector<DeltaProbeEntry> staircase;  // populated for the min t-norm
};

/// For a finite up-directed family the join of residuals against the family
/// supremum equals the unit; asserted.  Under the min t-norm the report also
/// evaluates the truncated staircase residuals whose values at infinity stay
/// strictly below the unit, the shape of the infinite-family failure.
DeltaProbeReport delta_condition_d_probe(const std::vector<StepFunction>& family, TNorm t);

/// The rational staircase capped at the given level: thresholds j/10 with
/// levels min(j/10, cap).
StepFunction staircase(const Rat& cap);

struct RegressionReport {
  bool ok = false;
  std::optional<QValue> extension_value;  // l(*) of the two-point instance
  std::optional<QValue> bc_gap;           // its Beck-Chevalley gap
  bool u_compact = false;
  bool d_continuous = false;
  bool d_functor = false;
  bool j_discrete = false;  // stays false: the violated hypothesis
  bool bc_holds = false;    // stays false: the violated conclusion
  std::vector<DeltaProbeEntry> staircase;
  std::string detail;
};

/// Rebuilds the two built-in counterexamples from fixed data and checks
/// every reported number exactly.
RegressionReport regression_counterexamples();

enum class Suite : std::uint8_t {
  max_right_cocomplete,
  max_right_bc,
  max_left_cocomplete,
  max_left_bc,
  evt_closure,
  evt_quantale,
  berge,
};

std::string suite_name(Suite s);
std::optional<Suite> parse_suite(const std::string& name);
std::vector<Suite> all_suites();

struct SuiteSummary {
  Suite suite;
  int trials = 0;
  int passes = 0;
  int skips = 0;
  int failures = 0;
  std::map<std::string, int> skip_reasons;
  std::vector<std::uint64_t> failure_seeds;

  /// The meaningfulness gate: at least 1% of trials must reach the
  /// conclusion.
  bool meaningful() const { return trials == 0 || passes + failures >= (trials + 99) / 100; }
  bool ok() const { return failures == 0 && meaningful(); }
};

struct CampaignSummary {
  std::vector<SuiteSummary> suites;
  double seconds = 0.0;
  bool ok() const {
    for (const auto& s : suites)
      if (!s.ok()) return false;
    return true;
  }
};

/// Runs the selected suites over seeded instances, in parallel when
/// hardware allows; per-trial streams derive from (seed, trial) so the
/// summary does not depend on the thread count.
CampaignSummary fuzz_campaign(const GeneratorConfig& cfg, const std::vector<Suite>& suites);

}  // namespace qrel
