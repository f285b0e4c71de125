#pragma once

// Linear integer terms and a Fourier-Motzkin feasibility check with integer
// tightening. Infeasible verdicts are sound for integers; feasible verdicts
// may be rational-only, so integer models are reconstructed when possible.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebhint/formula.hpp"

namespace ebhint {

// Raised for constructs outside the linear quantifier-free fragment.
struct UnsupportedConstruct : std::runtime_error {
  explicit UnsupportedConstruct(const std::string& what) : std::runtime_error(what) {}
};

struct DeadlineExceeded : std::runtime_error {
  DeadlineExceeded() : std::runtime_error("deadline exceeded") {}
};

using Clock = std::chrono::steady_clock;

inline void checkDeadline(const std::optional<Clock::time_point>& deadline) {
  if (deadline && Clock::now() > *deadline) throw DeadlineExceeded{};
}

// sum(coeffs[x] * x) + constant
struct LinearTerm {
  std::map<Symbol, std::int64_t> coeffs;
  std::int64_t constant = 0;

  bool isConstant() const { return coeffs.empty(); }
  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

namespace detail {

inline std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw UnsupportedConstruct("arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

inline LinearTerm scaled(const LinearTerm& t, std::int64_t k) {
  LinearTerm out;
  if (k == 0) return out;
  for (const auto& [s, c] : t.coeffs) out.coeffs[s] = checked(static_cast<__int128>(c) * k);
  out.constant = checked(static_cast<__int128>(t.constant) * k);
  return out;
}

inline LinearTerm plus(const LinearTerm& a, const LinearTerm& b) {
  LinearTerm out = a;
  for (const auto& [s, c] : b.coeffs) {
    std::int64_t v = checked(static_cast<__int128>(out.coeffs[s]) + c);
    if (v == 0) {
      out.coeffs.erase(s);
    } else {
      out.coeffs[s] = v;
    }
  }
  out.constant = checked(static_cast<__int128>(a.constant) + b.constant);
  return out;
}

inline std::int64_t floorDiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline std::int64_t ceilDiv(std::int64_t a, std::int64_t b) { return -floorDiv(-a, b); }

}  // namespace detail

inline LinearTerm linearize(const Formula& e) {
  using detail::plus;
  using detail::scaled;
  switch (e.kind()) {
    case Kind::Literal: {
      LinearTerm t;
      t.constant = e.value();
      return t;
    }
    case Kind::Ident: {
      LinearTerm t;
      t.coeffs[e.symbol()] = 1;
      return t;
    }
    case Kind::Negate: return scaled(linearize(e.kid(0)), -1);
    case Kind::Add: return plus(linearize(e.kid(0)), linearize(e.kid(1)));
    case Kind::Sub: return plus(linearize(e.kid(0)), scaled(linearize(e.kid(1)), -1));
    case Kind::Mul: {
      LinearTerm a = linearize(e.kid(0));
      LinearTerm b = linearize(e.kid(1));
      if (a.isConstant()) return scaled(b, a.constant);
      if (b.isConstant()) return scaled(a, b.constant);
      throw UnsupportedConstruct("nonlinear multiplication");
    }
    default: throw UnsupportedConstruct("not an integer term");
  }
}

// One row: sum(a[i] * x_i) + c <= 0 over a dense variable numbering.
struct Row {
  std::vector<std::int64_t> a;
  std::int64_t c = 0;
};

enum class FmVerdict { Infeasible, Feasible, Unknown };

struct FmResult {
  FmVerdict verdict = FmVerdict::Unknown;
  std::optional<std::vector<std::int64_t>> model;  // integer point, when reconstructed
};

struct FmOptions {
  std::size_t maxRows = 4000;
  std::optional<Clock::time_point> deadline;
};

class FourierMotzkin {
 public:
  FourierMotzkin(std::size_t nvars, FmOptions opts) : n_(nvars), opts_(opts) {}

  void addInequality(Row r) { pending_.push_back(std::move(r)); }

  // Adds sum(a x) + c = 0.
  void addEquality(Row r) { equalities_.push_back(std::move(r)); }

  FmResult solve() {
    std::vector<Row> cur;
    try {
      std::vector<std::pair<std::size_t, Row>> solved;
      if (!solveEqualities(solved)) return {FmVerdict::Infeasible, std::nullopt};
      for (auto& r : pending_) {
        if (!normalize(r)) return {FmVerdict::Infeasible, std::nullopt};
        if (!isConstant(r)) cur.push_back(r);
      }
      dedupe(cur);
      std::vector<std::vector<Row>> stages;
      std::vector<std::size_t> order;
      for (;;) {
        checkDeadline(opts_.deadline);
        auto v = pickVariable(cur);
        if (!v) break;
        stages.push_back(cur);
        order.push_back(*v);
        std::vector<Row> next, pos, neg;
        for (auto& r : cur) {
          if (r.a[*v] > 0) {
            pos.push_back(r);
          } else if (r.a[*v] < 0) {
            neg.push_back(r);
          } else {
            next.push_back(r);
          }
        }
        for (const auto& p : pos) {
          for (const auto& q : neg) {
            Row r = combine(p, q, *v);
            if (!normalize(r)) return {FmVerdict::Infeasible, std::nullopt};
            if (!isConstant(r)) next.push_back(std::move(r));
          }
        }
        dedupe(next);
        if (next.size() > opts_.maxRows) return {FmVerdict::Unknown, std::nullopt};
        cur = std::move(next);
      }
      auto point = reconstruct(stages, order);
      if (point) {
        for (auto it = solved.rbegin(); it != solved.rend(); ++it) {
          const auto& [v, eq] = *it;
          __int128 rest = eq.c;
          for (std::size_t j = 0; j < n_; ++j) {
            if (j != v) rest += static_cast<__int128>(eq.a[j]) * (*point)[j];
          }
          (*point)[v] = detail::checked(-rest * eq.a[v]);
        }
      }
      return {FmVerdict::Feasible, point};
    } catch (const UnsupportedConstruct&) {
      return {FmVerdict::Unknown, std::nullopt};
    }
  }

 private:
  // Substitutes away every equality with a unit coefficient; the rest become
  // inequality pairs. Returns false on a divisibility conflict.
  bool solveEqualities(std::vector<std::pair<std::size_t, Row>>& solved) {
    std::vector<Row> eqs = equalities_;
    for (;;) {
      for (auto& e : eqs) {
        const std::int64_t g = gcdOf(e.a);
        if (g == 0) {
          if (e.c != 0) return false;
          continue;
        }
        if (e.c % g != 0) return false;
        for (auto& x : e.a) x /= g;
        e.c /= g;
      }
      std::erase_if(eqs, [](const Row& e) { return isConstant(e); });
      std::optional<std::size_t> pick, var;
      for (std::size_t i = 0; i < eqs.size() && !pick; ++i) {
        for (std::size_t v = 0; v < n_; ++v) {
          if (eqs[i].a[v] == 1 || eqs[i].a[v] == -1) {
            pick = i;
            var = v;
            break;
          }
        }
      }
      if (!pick) break;
      const Row eq = eqs[*pick];
      eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(*pick));
      auto eliminate = [&](Row& r) {
        const std::int64_t k = r.a[*var] * eq.a[*var];
        if (k == 0) return;
        for (std::size_t j = 0; j < n_; ++j) r.a[j] = detail::checked(r.a[j] - static_cast<__int128>(k) * eq.a[j]);
        r.c = detail::checked(r.c - static_cast<__int128>(k) * eq.c);
      };
      for (auto& r : eqs) eliminate(r);
      for (auto& r : pending_) eliminate(r);
      for (auto& [v, r] : solved) eliminate(r);
      solved.emplace_back(*var, eq);
    }
    for (auto& e : eqs) {
      Row neg = e;
      for (auto& x : neg.a) x = -x;
      neg.c = -neg.c;
      pending_.push_back(std::move(e));
      pending_.push_back(std::move(neg));
    }
    return true;
  }

  static std::int64_t gcdOf(const std::vector<std::int64_t>& a) {
    std::int64_t g = 0;
    for (auto x : a) g = std::gcd(g, x < 0 ? -x : x);
    return g;
  }
  static bool isConstant(const Row& r) {
    return std::all_of(r.a.begin(), r.a.end(), [](std::int64_t x) { return x == 0; });
  }

  // Divides by the coefficient gcd, rounding the bound towards feasibility
  // for integers. Returns false on a violated constant row.
  static bool normalize(Row& r) {
    const std::int64_t g = gcdOf(r.a);
    if (g == 0) return r.c <= 0;
    if (g > 1) {
      for (auto& x : r.a) x /= g;
      r.c = detail::ceilDiv(r.c, g);
    }
    return true;
  }

  static void dedupe(std::vector<Row>& rows) {
    std::map<std::vector<std::int64_t>, std::int64_t> best;
    for (const auto& r : rows) {
      auto [it, inserted] = best.emplace(r.a, r.c);
      if (!inserted) it->second = std::max(it->second, r.c);
    }
    rows.clear();
    for (auto& [a, c] : best) rows.push_back(Row{a, c});
  }

  std::optional<std::size_t> pickVariable(const std::vector<Row>& rows) const {
    std::optional<std::size_t> best;
    std::int64_t bestCost = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      std::int64_t pos = 0, neg = 0;
      for (const auto& r : rows) {
        if (r.a[v] > 0) ++pos;
        if (r.a[v] < 0) ++neg;
      }
      if (pos + neg == 0) continue;
      const std::int64_t cost = pos * neg - pos - neg;
      if (!best || cost < bestCost) {
        best = v;
        bestCost = cost;
      }
    }
    return best;
  }

  Row combine(const Row& p, const Row& q, std::size_t v) const {
    const __int128 kp = -static_cast<__int128>(q.a[v]);  // > 0
    const __int128 kq = p.a[v];                           // > 0
    Row r;
    r.a.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) r.a[i] = detail::checked(kp * p.a[i] + kq * q.a[i]);
    r.c = detail::checked(kp * p.c + kq * q.c);
    return r;
  }

  // Back-substitution through the elimination stages. Each stage bounds its
  // variable given the later ones; a short backtracking search covers the
  // integer gaps the tightened shadow can leave.
  std::optional<std::vector<std::int64_t>> reconstruct(const std::vector<std::vector<Row>>& stages,
                                                       const std::vector<std::size_t>& order) const {
    std::vector<std::int64_t> x(n_, 0);
    std::size_t budget = 20000;
    if (assign(stages, order, order.size(), x, budget)) return x;
    return std::nullopt;
  }

  bool assign(const std::vector<std::vector<Row>>& stages, const std::vector<std::size_t>& order,
              std::size_t k, std::vector<std::int64_t>& x, std::size_t& budget) const {
    if (k == 0) return true;
    --k;
    const std::size_t v = order[k];
    std::optional<std::int64_t> lo, hi;
    for (const auto& r : stages[k]) {
      if (r.a[v] == 0) continue;
      __int128 rest = r.c;
      for (std::size_t j = 0; j < n_; ++j) {
        if (j != v) rest += static_cast<__int128>(r.a[j]) * x[j];
      }
      const std::int64_t restv = detail::checked(rest);
      if (r.a[v] > 0) {
        const std::int64_t bound = detail::floorDiv(-restv, r.a[v]);
        hi = hi ? std::min(*hi, bound) : bound;
      } else {
        const std::int64_t bound = detail::ceilDiv(restv, -r.a[v]);
        lo = lo ? std::max(*lo, bound) : bound;
      }
    }
    if (lo && hi && *lo > *hi) return false;
    std::int64_t start = 0;
    if (lo && start < *lo) start = *lo;
    if (hi && start > *hi) start = *hi;
    // Candidates nearest to start first, at most a small window.
    for (int i = 0; i < 31; ++i) {
      const std::int64_t c = start + (i % 2 ? (i + 1) / 2 : -(i / 2));
      {
        if ((lo && c < *lo) || (hi && c > *hi)) continue;
        if (budget == 0) return false;
        --budget;
        x[v] = c;
        if (assign(stages, order, k, x, budget)) return true;
      }
    }
    x[v] = 0;
    return false;
  }

  std::size_t n_;
  FmOptions opts_;
  std::vector<Row> pending_;
  std::vector<Row> equalities_;
};

}  // namespace ebhint
