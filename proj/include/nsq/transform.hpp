#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsq/derivation.hpp"
#include "nsq/prover.hpp"

namespace nsq {

struct TransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TransformResult {
  Derivation derivation;
  bool reproved = false;  // conclusion re-proved by search (GD-family fallback)
};

// Figure-3 rule application as a proof rewrite. Field use per rule:
//   wk        w, add_forms, add_kids
//   wv        w, var
//   cv        w, var
//   bot_r     w
//   nd        w (to), u (from), vars
//   dd        w (from), u (to), vars          [CD regimes only]
//   cd        w, vars                          [CD regimes only]
//   mrg       w (parent), u (child)
//   ctr_in    w, formula (input copy to contract)
//   ctr_out   w, formula (output copy)
//   ex        w (parent), u (child to push down); fresh node label is chosen
//   ps        var (y), var2 (x): substitute y for x
//   ls        w (new), u (old): rename label
//   n         (no arguments; fresh root label is chosen)
//   lwr       w (from), u (to), formula or forms (outputs to move down)
//   lft       w (to), u (from), formula or forms (inputs to move up)
//   ec        w (parent), u (kept child), v (merged child)
//   cut       w, formula, second (derivation of the input premise)
struct TransformRequest {
  std::string rule;
  Label w = 0, u = 0, v = 0;
  std::string var, var2;
  std::vector<std::string> vars;  // nd/dd/cd
  std::optional<Polarized> formula;
  std::vector<Polarized> add_forms;
  std::vector<Sequent> add_kids;
  std::optional<Derivation> second;
  Budget reprove_budget;
};

// Applies the named admissible rule to a derivation that checks in c. Raises
// TransformError on rule/calculus mismatch or side-condition failure. The
// height-preserving rules never grow the proof; (ex), (ec), (lwr), (ctr_out)
// and (cut) fall back to re-proving in the GD-family calculi.
TransformResult admissible(const TransformRequest& req, const Derivation& d, const Calculus& c);

// Height-preserving invertibility. `labels`/`principal`/`var` pick the rule
// instance shape on d's conclusion (fresh choices are made internally); the
// result proves each premise of that instance, in schema order.
std::vector<Derivation> invert(RuleId r, const Derivation& d, std::vector<Label> labels,
                               const Polarized& principal, std::optional<std::string> var,
                               const Calculus& c);

// Inverts `shape` (a valid instance on d's conclusion whose fresh names do not
// occur anywhere in d) against d.
std::vector<Derivation> invert_rule(const RuleInstance& shape, const Derivation& d,
                                    const Calculus& c);

// Appendix-A fresh-variable deletion: d proves X,y; S with y otherwise absent;
// the result proves X; S at the same height, converting the (all_l1)/(ex_r1)
// instances that consumed y into (all_l2)/(ex_r2).
Derivation fresh_delete(const Derivation& d, const std::string& y, const Calculus& c);

// Syntactic cut elimination for the intuitionistic calculi (no (lin)).
Derivation eliminate_cut(const Derivation& d, const Calculus& c);

// Individual structural rewrites (exposed for composition and tests).
Derivation wk_deriv(const Derivation& d, Label w, const std::vector<Polarized>& forms,
                    const std::vector<Sequent>& kids, const Calculus& c);
Derivation wv_deriv(const Derivation& d, Label w, const std::string& x, const Calculus& c);
Derivation cv_deriv(const Derivation& d, Label w, const std::string& x, const Calculus& c);
Derivation ps_deriv(const Derivation& d, const std::string& y, const std::string& x,
                    const Calculus& c);
Derivation ls_deriv(const Derivation& d, Label to, Label from, const Calculus& c);
Derivation botr_deriv(const Derivation& d, Label w, const Calculus& c);
Derivation n_deriv(const Derivation& d, const Calculus& c);
Derivation nd_deriv(const Derivation& d, Label w, Label u, const std::vector<std::string>& zs,
                    const Calculus& c);
Derivation dd_deriv(const Derivation& d, Label w, Label u, const std::vector<std::string>& zs,
                    const Calculus& c);
Derivation cd_deriv(const Derivation& d, Label w, const std::vector<std::string>& zs,
                    const Calculus& c);
Derivation mrg_deriv(const Derivation& d, Label parent, Label child, const Calculus& c);
Derivation ec_deriv(const Derivation& d, Label parent, Label kept, Label merged,
                    const Calculus& c);
Derivation ex_deriv(const Derivation& d, Label parent, Label child, Label fresh_label,
                    const Calculus& c);
Derivation ctr_deriv(const Derivation& d, Label w, const Polarized& p, const Calculus& c);
Derivation lft_deriv(const Derivation& d, Label to, Label from,
                     const std::vector<Polarized>& moved, const Calculus& c);
Derivation lwr_deriv(const Derivation& d, Label from, Label to,
                     const std::vector<Polarized>& moved, const Calculus& c);

}  // namespace nsq
