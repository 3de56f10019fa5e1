#include "nsq/semantics.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace nsq {

bool KripkeModel::holds(const std::string& pred, int w,
                        const std::vector<std::string>& args) const {
  auto it = valuation.find(pred);
  if (it == valuation.end()) return false;
  auto jt = it->second.find(w);
  if (jt == it->second.end()) return false;
  return jt->second.count(args) > 0;
}

const std::set<std::string>& KripkeModel::domain(int w) const {
  static const std::set<std::string> empty;
  auto it = domains.find(w);
  return it == domains.end() ? empty : it->second;
}

bool forces(const KripkeModel& m, int w, const Assignment& mu, const Formula& f) {
  switch (f.kind()) {
    case Conn::Atom: {
      std::vector<std::string> args;
      for (const auto& x : f.args()) {
        auto it = mu.find(x);
        if (it == mu.end()) throw SequentError("unbound variable " + x + " in assignment");
        args.push_back(it->second);
      }
      return m.holds(f.name(), w, args);
    }
    case Conn::Bottom: return false;
    case Conn::Or: return forces(m, w, mu, f.lhs()) || forces(m, w, mu, f.rhs());
    case Conn::And: return forces(m, w, mu, f.lhs()) && forces(m, w, mu, f.rhs());
    case Conn::Imp: {
      for (int u : m.worlds)
        if (m.leq(w, u) && forces(m, u, mu, f.lhs()) && !forces(m, u, mu, f.rhs()))
          return false;
      return true;
    }
    case Conn::Exists: {
      for (const auto& d : m.domain(w)) {
        Assignment mu2 = mu;
        mu2[f.bound_var()] = d;
        if (forces(m, w, mu2, f.body())) return true;
      }
      return false;
    }
    case Conn::Forall: {
      for (int u : m.worlds) {
        if (!m.leq(w, u)) continue;
        for (const auto& d : m.domain(u)) {
          Assignment mu2 = mu;
          mu2[f.bound_var()] = d;
          if (!forces(m, u, mu2, f.body())) return false;
        }
      }
      return true;
    }
  }
  return false;
}

namespace {

int world_of(const Interpretation& iota, Label w) {
  auto it = iota.find(w);
  if (it == iota.end()) throw SequentError("label " + label_name(w) + " missing in iota");
  return it->second;
}

// Flat part only (signature condition, inputs, outputs).
bool satisfies_flat(const KripkeModel& m, const Interpretation& iota, const Assignment& mu,
                    const Sequent& s) {
  if (s.forms.empty()) return false;  // X; empty is never satisfied
  int u = world_of(iota, s.label);
  for (const auto& [x, c] : s.sig) {
    auto it = mu.find(x);
    if (it == mu.end()) throw SequentError("unbound signature variable " + x);
    if (!m.domain(u).count(it->second)) return true;  // hypothesis fails
  }
  for (const auto& [p, c] : s.forms)
    if (p.polarity == Polarity::Input && !forces(m, u, mu, p.formula)) return true;
  for (const auto& [p, c] : s.forms)
    if (p.polarity == Polarity::Output && forces(m, u, mu, p.formula)) return true;
  return false;
}

bool satisfies_rec(const KripkeModel& m, const Interpretation& iota, const Assignment& mu,
                   const Sequent& s) {
  int u = world_of(iota, s.label);
  if (s.kids.empty()) return satisfies_flat(m, iota, mu, s);
  for (const auto& k : s.kids)
    if (!m.leq(u, world_of(iota, k.label))) return true;  // hypothesis fails
  if (satisfies_flat(m, iota, mu, s)) return true;
  for (const auto& k : s.kids)
    if (satisfies_rec(m, iota, mu, k)) return true;
  return false;
}

}  // namespace

bool satisfies_sequent(const KripkeModel& m, const Interpretation& iota, const Assignment& mu,
                       const Sequent& s) {
  return satisfies_rec(m, iota, mu, s);
}

FrameReport check_frame_conditions(const KripkeModel& m, Logic logic) {
  FrameReport rep;
  auto bad = [&](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };
  const bool fo = logic == Logic::ND || logic == Logic::CD || logic == Logic::GN ||
                  logic == Logic::GC;
  const bool gd = logic == Logic::GD || logic == Logic::GN || logic == Logic::GC;
  const bool cd = logic == Logic::CD || logic == Logic::GC;

  if (m.worlds.empty()) bad("W is empty");
  for (auto [w, u] : m.order)
    if (!m.worlds.count(w) || !m.worlds.count(u)) bad("order relates unknown worlds");
  for (int w : m.worlds)
    if (!m.leq(w, w)) bad("not reflexive at " + label_name(w));
  for (auto [w, u] : m.order)
    for (auto [u2, v] : m.order)
      if (u == u2 && !m.leq(w, v))
        bad("not transitive: " + label_name(w) + "<=" + label_name(u) + "<=" + label_name(v));
  if (gd) {
    for (auto [w, u] : m.order)
      for (auto [w2, v] : m.order)
        if (w == w2 && !m.leq(u, v) && !m.leq(v, u))
          bad("connectivity fails at " + label_name(u) + "," + label_name(v));
  }
  // monotone valuation
  for (const auto& [p, byw] : m.valuation)
    for (const auto& [w, tuples] : byw)
      for (int v : m.worlds)
        if (m.leq(w, v))
          for (const auto& t : tuples)
            if (!m.holds(p, v, t)) bad("valuation of " + p + " not monotone");
  // arity discipline
  for (const auto& [p, byw] : m.valuation) {
    auto it = m.arities.find(p);
    size_t n = it == m.arities.end() ? 0 : static_cast<size_t>(it->second);
    for (const auto& [w, tuples] : byw)
      for (const auto& t : tuples)
        if (t.size() != n) bad("tuple arity mismatch for " + p);
    if (!fo && n != 0) bad("predicate " + p + " is not propositional");
  }
  if (fo) {
    for (int w : m.worlds)
      if (m.domain(w).empty()) bad("empty domain at " + label_name(w));
    for (auto [w, v] : m.order)
      for (const auto& d : m.domain(w))
        if (!m.domain(v).count(d)) bad("(ND) fails: " + d + " lost along <=");
    if (cd) {
      for (int w : m.worlds)
        if (m.domain(w) != m.domain(*m.worlds.begin())) bad("(CD) fails: domains differ");
    }
    for (const auto& [p, byw] : m.valuation)
      for (const auto& [w, tuples] : byw)
        for (const auto& t : tuples)
          for (const auto& d : t)
            if (!m.domain(w).count(d)) bad("V(" + p + ") uses element outside D");
  }
  return rep;
}

Countermodel extract_countermodel(const Sequent& top, Logic logic) {
  const bool gd = logic == Logic::GD || logic == Logic::GN || logic == Logic::GC;
  const bool cd = logic == Logic::CD || logic == Logic::GC;
  const bool fo = logic == Logic::ND || logic == Logic::CD || logic == Logic::GN ||
                  logic == Logic::GC;
  if (gd && !is_linear(top))
    throw SequentError("counter-model extraction for a GD-family logic needs a linear top");

  Countermodel cm;
  KripkeModel& m = cm.model;
  auto labels = labels_of(top);
  for (Label w : labels) {
    m.worlds.insert(w);
    cm.iota[w] = w;
  }
  for (Label w : labels)
    for (Label u : labels)
      if (reachable(top, w, u)) m.order.insert({w, u});

  std::set<std::string> all_sig = signature_vars(top);
  for (Label w : labels) {
    std::set<std::string> d;
    if (cd) {
      d = all_sig;
    } else {
      for (Label u : labels)
        if (reachable(top, u, w)) {
          const Sequent& nu = locate_or_throw(top, u);
          for (const auto& [x, c] : nu.sig) d.insert(x);
        }
    }
    if (fo) m.domains[w] = d;
  }
  for (const auto& x : all_sig) cm.mu[x] = x;

  // V(p, w) = tuples of input atoms in components reaching w
  for (Label u : labels) {
    const Sequent& nu = locate_or_throw(top, u);
    for (const auto& [p, c] : nu.forms) {
      if (p.polarity != Polarity::Input || !p.formula.is_atom()) continue;
      m.arities[p.formula.name()] = static_cast<int>(p.formula.args().size());
      for (Label w : labels)
        if (reachable(top, u, w)) m.valuation[p.formula.name()][w].insert(p.formula.args());
    }
  }
  // record arities of output atoms too, so the report is complete
  std::map<std::string, int> ar;
  predicates_of(top, ar);
  for (auto& [p, n] : ar)
    if (!m.arities.count(p)) m.arities[p] = n;
  return cm;
}

// ---------------------------------------------------------------------------
// Finite-model oracle

namespace {

// All reflexive-transitive orders on n worlds, canonical under permutation.
std::vector<std::set<std::pair<int, int>>> preorders(int n, bool connected) {
  std::vector<std::set<std::pair<int, int>>> out;
  int bits = n * (n - 1);  // off-diagonal entries
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) cells.push_back({i, j});

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  for (long long mask = 0; mask < (1LL << bits); ++mask) {
    std::set<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i) rel.insert({i, i});
    for (int b = 0; b < bits; ++b)
      if (mask & (1LL << b)) rel.insert(cells[b]);
    auto leq = [&](int a, int b) { return rel.count({a, b}) > 0; };
    bool ok = true;
    for (auto [a, b] : rel)
      for (auto [b2, c] : rel)
        if (b == b2 && !leq(a, c)) ok = false;
    if (!ok) continue;
    if (connected) {
      for (auto [a, b] : rel)
        for (auto [a2, c] : rel)
          if (a == a2 && !leq(b, c) && !leq(c, b)) ok = false;
      if (!ok) continue;
    }
    // canonical: bit mask minimal among all relabelings
    auto mask_of = [&](const std::vector<int>& p) {
      long long mm = 0;
      for (int b = 0; b < bits; ++b)
        if (rel.count({p[cells[b].first], p[cells[b].second]})) mm |= (1LL << b);
      return mm;
    };
    std::vector<int> p(perm);
    bool minimal = true;
    do {
      if (mask_of(p) < mask) {
        minimal = false;
        break;
      }
    } while (std::next_permutation(p.begin(), p.end()));
    if (minimal) out.push_back(rel);
  }
  return out;
}

// Enumerates monotone domain assignments (ND) or one shared domain (CD).
void enumerate_domains(const std::set<std::pair<int, int>>& order, int n, int max_domain,
                       bool constant, const std::function<bool(const std::map<int, std::set<std::string>>&)>& cb) {
  std::vector<std::string> universe;
  for (int i = 1; i <= max_domain; ++i) universe.push_back("d" + std::to_string(i));
  if (constant) {
    for (int mask = 1; mask < (1 << max_domain); ++mask) {
      std::map<int, std::set<std::string>> D;
      std::set<std::string> d;
      for (int b = 0; b < max_domain; ++b)
        if (mask & (1 << b)) d.insert(universe[b]);
      for (int w = 0; w < n; ++w) D[w] = d;
      if (!cb(D)) return;
    }
    return;
  }
  // per-world nonempty subsets, monotone along order
  std::vector<int> masks(n, 1);
  std::function<bool(int)> rec = [&](int w) -> bool {
    if (w == n) {
      for (auto [a, b] : order) {
        if ((masks[a] & masks[b]) != masks[a]) return true;  // not monotone: skip
      }
      std::map<int, std::set<std::string>> D;
      for (int i = 0; i < n; ++i) {
        std::set<std::string> d;
        for (int b = 0; b < max_domain; ++b)
          if (masks[i] & (1 << b)) d.insert(universe[b]);
        D[i] = d;
      }
      return cb(D);
    }
    for (int mask = 1; mask < (1 << max_domain); ++mask) {
      masks[w] = mask;
      if (!rec(w + 1)) return false;
    }
    return true;
  };
  rec(0);
}

// All tuples over dom of length k.
void tuples_over(const std::vector<std::string>& dom, int k,
                 std::vector<std::vector<std::string>>& out) {
  if (k == 0) {
    out.push_back({});
    return;
  }
  std::vector<std::vector<std::string>> shorter;
  tuples_over(dom, k - 1, shorter);
  for (const auto& t : shorter)
    for (const auto& d : dom) {
      auto t2 = t;
      t2.push_back(d);
      out.push_back(t2);
    }
}

}  // namespace

OracleResult enumerate_countermodel(const Formula& f, Logic logic, int max_worlds,
                                    int max_domain, long long combination_cap) {
  if (max_worlds < 1 || max_domain < 1) throw SequentError("oracle bounds must be >= 1");
  const bool gd = logic == Logic::GD || logic == Logic::GN || logic == Logic::GC;
  const bool cd = logic == Logic::CD || logic == Logic::GC;
  const bool fo = logic == Logic::ND || logic == Logic::CD || logic == Logic::GN ||
                  logic == Logic::GC;
  if (!fo && !f.is_propositional())
    throw SequentError("oracle: first-order formula under a propositional logic");

  // predicates of f
  std::map<std::string, int> arities;
  std::function<void(const Formula&)> preds = [&](const Formula& g) {
    switch (g.kind()) {
      case Conn::Atom: arities[g.name()] = static_cast<int>(g.args().size()); return;
      case Conn::Bottom: return;
      case Conn::Exists:
      case Conn::Forall: preds(g.body()); return;
      default: preds(g.lhs()); preds(g.rhs()); return;
    }
  };
  preds(f);
  const std::set<std::string> fv_set = free_vars(f);
  std::vector<std::string> fv(fv_set.begin(), fv_set.end());

  OracleResult res;
  long long budget = combination_cap;

  for (int n = 1; n <= max_worlds && !res.model; ++n) {
    for (auto& order : preorders(n, gd)) {
      if (res.model) break;
      auto try_model = [&](const std::map<int, std::set<std::string>>& D) -> bool {
        // enumerate monotone valuations, predicate by predicate
        KripkeModel m;
        for (int w = 0; w < n; ++w) m.worlds.insert(w);
        m.order = order;
        m.arities = arities;
        if (fo) m.domains = D;

        std::vector<std::string> pnames;
        for (auto& [p, k] : arities) pnames.push_back(p);

        // per predicate and world: candidate tuple sets; assignment recursion
        std::function<bool(size_t)> assign = [&](size_t pi) -> bool {
          if (--budget < 0) {
            res.truncated = true;
            return false;
          }
          if (pi == pnames.size()) {
            // all predicates assigned; check falsification
            for (int w = 0; w < n; ++w) {
              if (fv.empty()) {
                if (!forces(m, w, {}, f)) {
                  Countermodel cm;
                  cm.model = m;
                  cm.iota[0] = w;
                  res.model = cm;
                  return false;
                }
              } else {
                std::vector<std::string> dom(m.domain(w).begin(), m.domain(w).end());
                std::vector<std::vector<std::string>> ts;
                tuples_over(dom, static_cast<int>(fv.size()), ts);
                for (const auto& t : ts) {
                  Assignment mu;
                  for (size_t i = 0; i < fv.size(); ++i) mu[fv[i]] = t[i];
                  if (!forces(m, w, mu, f)) {
                    Countermodel cm;
                    cm.model = m;
                    cm.iota[0] = w;
                    cm.mu = mu;
                    res.model = cm;
                    return false;
                  }
                }
              }
            }
            return true;
          }
          const std::string& p = pnames[pi];
          int k = arities[p];
          // candidate tuples per world
          std::vector<std::vector<std::vector<std::string>>> cand(n);
          for (int w = 0; w < n; ++w) {
            std::vector<std::string> dom;
            if (fo) dom.assign(m.domain(w).begin(), m.domain(w).end());
            if (k == 0)
              cand[w].push_back({});
            else
              tuples_over(dom, k, cand[w]);
          }
          // choose a subset per world, monotone along order; recurse over worlds
          std::map<int, std::set<std::vector<std::string>>> val;
          std::function<bool(int)> world_rec = [&](int w) -> bool {
            if (w == n) {
              bool mono = true;
              for (auto [a, b] : order)
                for (const auto& t : val[a])
                  if (!val[b].count(t)) mono = false;
              if (mono) {
                m.valuation[p] = val;
                if (!assign(pi + 1)) return false;
              }
              return true;
            }
            int cn = static_cast<int>(cand[w].size());
            if (cn > 20) {
              res.truncated = true;
              return false;
            }
            for (int mask = 0; mask < (1 << cn); ++mask) {
              val[w].clear();
              for (int b = 0; b < cn; ++b)
                if (mask & (1 << b)) val[w].insert(cand[w][b]);
              if (!world_rec(w + 1)) return false;
            }
            return true;
          };
          return world_rec(0);
        };
        return assign(0);
      };

      if (fo) {
        enumerate_domains(order, n, max_domain, cd, try_model);
      } else {
        try_model({});
      }
      if (res.model || res.truncated) break;
    }
    if (res.truncated) break;
  }
  return res;
}

}  // namespace nsq
