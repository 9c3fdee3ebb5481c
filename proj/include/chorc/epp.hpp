#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chorc/behaviour.hpp"
#include "chorc/cc.hpp"
#include "chorc/sp.hpp"

namespace chorc {

/// Where and why the projection of a choreography on one process is
/// undefined. `path` addresses the conditional whose branch projections
/// could not be merged; `conflict` is the innermost pair of sub-behaviours
/// on which merging failed.
struct ProjectionFailure {
  enum class Kind { merge_conflict, other };

  Pid process;
  std::optional<RecVar> procedure;
  AstPath path;
  Kind kind = Kind::merge_conflict;
  std::optional<std::pair<XBehaviour, XBehaviour>> conflict;
};

/// Projection of `c` on process `r`; undefinedness shows up as `undefined`
/// subterms.
XBehaviour bproj(const DefSet& defs, const Choreography& c, const Pid& r);

/// Pairs each process with the collapsed projection.
std::vector<std::pair<Pid, XBehaviour>> epp_list(const DefSet& defs, const Choreography& c,
                                                 const std::vector<Pid>& ps);

/// Every root-cause failure of projecting `c` on `r`, deepest conditionals
/// first; empty iff the projection is defined. `root` names the AST root
/// (`main` or a procedure) for paths.
std::vector<ProjectionFailure> diagnose_projection(const DefSet& defs, const Choreography& c, const Pid& r,
                                                   const AstPath& root = "main");

std::vector<ProjectionFailure> projectable_c(const DefSet& defs, const std::vector<Pid>& ps, const Choreography& c);

std::vector<ProjectionFailure> projectable_d(const std::vector<RecVar>& xs, const DefSet& defs);

struct ProjectabilityIssue {
  enum class Conjunct {
    main_projectable,
    defs_projectable,
    main_coverage,       // processes of main (calls contribute nothing) within ps
    vars_coverage,       // declared processes of each X in Xs within ps
    body_coverage,       // processes of each body in Xs within ps
    procedure_coverage,  // procedures called from main or from bodies in Xs are in Xs
  };

  Conjunct conjunct;
  std::optional<Pid> process;
  std::optional<RecVar> procedure;
  std::optional<ProjectionFailure> failure;
  std::string message;
};

std::string_view to_string(ProjectabilityIssue::Conjunct c);

struct ProjectabilityReport {
  std::vector<ProjectabilityIssue> issues;
  bool ok() const { return issues.empty(); }
};

ProjectabilityReport projectable(const std::vector<RecVar>& xs, const std::vector<Pid>& ps, const CCProgram& p);

struct EppParams {
  std::vector<RecVar> procedures;
  std::vector<Pid> processes;
};

/// Procedures reachable from main through calls, and every process used by
/// main, by their declarations, or by their bodies. Both sorted.
EppParams infer_params(const CCProgram& p);

/// Projectability strengthened on runtime calls: for `rt_call(X, ps, C)`
/// each pending p must be declared by X and the projection of X's body on p
/// must have at least the branches of the projection of C on p.
bool str_projectable(const DefSet& defs, const Choreography& c, const Pid& r);

class NotProjectable : public std::runtime_error {
 public:
  explicit NotProjectable(ProjectabilityReport report);
  const ProjectabilityReport& report() const { return report_; }

 private:
  ProjectabilityReport report_;
};

/// Compiles a projectable program. Processes outside `ps` run `end`;
/// procedure entries exist for (X, p) with X in `xs` and p declared by X.
/// Throws NotProjectable when `projectable(xs, ps, p)` fails.
SPProgram epp(const std::vector<RecVar>& xs, const std::vector<Pid>& ps, const CCProgram& p);

/// The network part only, for a choreography already known to be
/// projectable on `ps`; nullopt if some projection is undefined.
std::optional<Network> epp_network(const DefSet& defs, const std::vector<Pid>& ps, const Choreography& c);

}  // namespace chorc
