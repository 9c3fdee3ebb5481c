#pragma once

namespace chorc::fault {

/// Seeded defects used by the mutation-sensitivity suite. Production code
/// consults `active()` at the exact point each defect would live; with the
/// default `none` every check is a single relaxed atomic load.
enum class Kind {
  none,
  drop_selection_projection,  // bproj forgets the sender side of a selection
  exact_match_only,           // correspondence requires N' == epp(P') instead of pruning
  swap_selection_branch,      // S_LSel/S_RSel install the opposite branch
  no_delay_eta,               // choreography semantics lose out-of-order interactions
  rt_call_ignores_pending,    // bproj of a runtime call ignores the pending list
};

Kind active();

/// Installs a defect for the lifetime of the scope.
class Scope {
 public:
  explicit Scope(Kind kind);
  ~Scope();
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;

 private:
  Kind previous_;
};

}  // namespace chorc::fault
