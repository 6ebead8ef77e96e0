#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "intersective/bigint.hpp"
#include "intersective/errors.hpp"
#include "intersective/intpoly.hpp"

namespace intersective {

// Shared, ordered variable table. Index 0 is conventionally the polynomial
// variable "x" for families; parameters follow.
using VarTable = std::vector<std::string>;
using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const VarTable>(std::move(names));
}

// Sparse multivariate polynomial over Z on a fixed variable table.
// Monomials are exponent vectors; the map's lexicographic key order doubles
// as the term order (variable 0 most significant).
class MPoly {
public:
    using Expo = std::vector<uint16_t>;

    MPoly() = default;
    explicit MPoly(VarTablePtr vars) : vars_(std::move(vars)) {}

    static MPoly constant(VarTablePtr vars, BigInt v) {
        MPoly r(std::move(vars));
        if (!v.is_zero()) r.terms_[Expo(r.nvars(), 0)] = std::move(v);
        return r;
    }
    static MPoly var(VarTablePtr vars, size_t index, unsigned exp = 1) {
        MPoly r(std::move(vars));
        Expo e(r.nvars(), 0);
        e[index] = static_cast<uint16_t>(exp);
        r.terms_[e] = BigInt(1);
        return r;
    }
    static MPoly var(VarTablePtr vars, const std::string& name, unsigned exp = 1) {
        size_t idx = index_of(*vars, name);
        return var(std::move(vars), idx, exp);
    }

    static size_t index_of(const VarTable& vars, const std::string& name) {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        throw std::invalid_argument("MPoly: unknown variable " + name);
    }

    const VarTablePtr& vars() const { return vars_; }
    size_t nvars() const { return vars_ ? vars_->size() : 0; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Expo, BigInt>& terms() const { return terms_; }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        const auto& e = terms_.begin()->first;
        return std::all_of(e.begin(), e.end(), [](uint16_t v) { return v == 0; });
    }
    BigInt constant_value() const {
        if (terms_.empty()) return BigInt(0);
        if (!is_constant()) throw std::domain_error("MPoly: not a constant");
        return terms_.begin()->second;
    }

    unsigned degree_in(size_t v) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<unsigned>(e[v]));
        return d;
    }

    bool involves(size_t v) const {
        for (const auto& [e, c] : terms_)
            if (e[v] != 0) return true;
        return false;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(a.vars_ ? a.vars_ : b.vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Expo e(ea);
                for (size_t i = 0; i < e.size(); ++i) {
                    unsigned s = static_cast<unsigned>(ea[i]) + eb[i];
                    if (s > 0xffff) throw TooLarge("MPoly: exponent overflow");
                    e[i] = static_cast<uint16_t>(s);
                }
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    friend MPoly operator*(const MPoly& a, const BigInt& s) {
        MPoly r = a;
        if (s.is_zero()) return MPoly(a.vars_);
        for (auto& [e, c] : r.terms_) c *= s;
        return r;
    }

    MPoly pow(unsigned e) const {
        MPoly r = constant(vars_, BigInt(1));
        MPoly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    // Univariate view in variable v: coefficient MPolys ascending in v.
    std::vector<MPoly> coeffs_in(size_t v) const {
        std::vector<MPoly> out(degree_in(v) + 1, MPoly(vars_));
        for (const auto& [e, c] : terms_) {
            Expo e2 = e;
            unsigned d = e2[v];
            e2[v] = 0;
            out[d].add_term(e2, c);
        }
        return out;
    }

    static MPoly from_coeffs_in(size_t v, const std::vector<MPoly>& coeffs, VarTablePtr vars) {
        MPoly r(vars);
        for (size_t d = 0; d < coeffs.size(); ++d) {
            for (const auto& [e, c] : coeffs[d].terms_) {
                Expo e2 = e;
                e2[v] = static_cast<uint16_t>(e2[v] + d);
                r.add_term(e2, c);
            }
        }
        return r;
    }

    // Substitute variable v by an MPoly (Horner in the univariate view).
    MPoly substitute(size_t v, const MPoly& value) const {
        auto cs = coeffs_in(v);
        MPoly acc(vars_);
        for (size_t i = cs.size(); i-- > 0;) acc = acc * value + cs[i];
        return acc;
    }

    // Substitute a single variable by an integer.
    MPoly substitute(size_t v, const BigInt& value) const {
        return substitute(v, constant(vars_, value));
    }

    // gcd of all coefficients (nonnegative)
    BigInt content() const {
        BigInt g(0);
        for (const auto& [e, c] : terms_) g = BigInt::gcd(g, c);
        return g;
    }

    MPoly divexact_scalar(const BigInt& s) const {
        MPoly r = *this;
        for (auto& [e, c] : r.terms_) c = c.divexact(s);
        return r;
    }

    // Exact multivariate division; throws on inexactness.
    MPoly divexact(const MPoly& d) const {
        if (d.is_zero()) throw std::domain_error("MPoly: division by zero");
        if (d.is_constant()) return divexact_scalar(d.constant_value());
        MPoly rem = *this;
        MPoly quo(vars_);
        const auto& [de, dc] = *d.terms_.rbegin(); // lex-leading term of divisor
        while (!rem.is_zero()) {
            const auto& [re, rc] = *rem.terms_.rbegin();
            Expo qe(re.size());
            for (size_t i = 0; i < re.size(); ++i) {
                if (re[i] < de[i]) throw std::domain_error("MPoly: inexact division (monomial)");
                qe[i] = static_cast<uint16_t>(re[i] - de[i]);
            }
            if (!rc.divisible_by(dc)) throw std::domain_error("MPoly: inexact division (coeff)");
            MPoly t(vars_);
            t.terms_[qe] = rc.divexact(dc);
            quo = quo + t;
            rem = rem - t * d;
        }
        return quo;
    }

    // Full integer evaluation; assignment indexed by variable.
    BigInt evaluate(const std::vector<BigInt>& assignment) const {
        BigInt acc(0);
        for (const auto& [e, c] : terms_) {
            BigInt t = c;
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i]) t *= assignment[i].pow(e[i]);
            acc += t;
        }
        return acc;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!s.empty()) s += " + ";
            std::string mono;
            for (size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += (*vars_)[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty())
                s += c.to_string();
            else if (c.is_one())
                s += mono;
            else if (c == BigInt(-1))
                s += "-" + mono;
            else
                s += c.to_string() + "*" + mono;
        }
        return s;
    }

private:
    void add_term(const Expo& e, BigInt c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    VarTablePtr vars_;
    std::map<Expo, BigInt> terms_;
};

// ---------------------------------------------------------------------------
// ParamPoly: polynomial in x whose coefficients are integer polynomials in
// declared parameters. Internally an MPoly whose variable 0 is "x".
// ---------------------------------------------------------------------------

struct ParamPoly {
    VarTablePtr vars; // vars[0] == "x", remainder are the declared parameters
    MPoly poly;

    ParamPoly() = default;
    explicit ParamPoly(MPoly p) : vars(p.vars()), poly(std::move(p)) {}

    std::vector<std::string> params() const {
        return std::vector<std::string>(vars->begin() + 1, vars->end());
    }

    int degree_x() const { return poly.is_zero() ? -1 : static_cast<int>(poly.degree_in(0)); }

    // Coefficient of x^d as an MPoly in the parameters.
    std::vector<MPoly> x_coefficients() const { return poly.coeffs_in(0); }
};

// Exact substitution of every declared parameter; result is univariate in x.
inline IntPoly specialize(const ParamPoly& F,
                          const std::map<std::string, BigInt>& values) {
    const VarTable& vt = *F.vars;
    std::vector<BigInt> assignment(vt.size(), BigInt(0));
    for (size_t i = 1; i < vt.size(); ++i) {
        auto it = values.find(vt[i]);
        if (it == values.end())
            throw std::invalid_argument("specialize: missing parameter " + vt[i]);
        assignment[i] = it->second;
    }
    auto coeffs = F.poly.coeffs_in(0);
    std::vector<BigInt> out;
    out.reserve(coeffs.size());
    for (auto& c : coeffs) out.push_back(c.evaluate(assignment));
    return IntPoly(std::move(out));
}

// ---------------------------------------------------------------------------
// Sound elimination by iterated univariate resultants. Every common zero of
// the input system (over any field) is a zero of every output polynomial;
// the output may vanish on extra points, so callers filter candidates.
// ---------------------------------------------------------------------------

namespace detail {

constexpr size_t kEliminationMonomialBudget = 1000000;

inline void guard_size(const MPoly& p, const std::string& step) {
    if (p.term_count() > kEliminationMonomialBudget)
        throw EliminationBlowup(step, "eliminate: monomial budget exceeded at " + step);
}

// Pseudo-remainder of a by d with respect to variable v, over Z[vars].
inline MPoly mpoly_prem(const MPoly& a, const MPoly& d, size_t v, const std::string& step) {
    auto ac = a.coeffs_in(v);
    auto dc = d.coeffs_in(v);
    int da = static_cast<int>(ac.size()) - 1;
    int dd = static_cast<int>(dc.size()) - 1;
    if (dd < 0) throw std::domain_error("mpoly_prem: division by zero");
    if (da < dd) return a;
    const MPoly& lc = dc.back();
    int e = da - dd + 1;
    std::vector<MPoly> r = ac;
    while (static_cast<int>(r.size()) - 1 >= dd) {
        int dr = static_cast<int>(r.size()) - 1;
        MPoly lead = r.back();
        // r = lc*r - lead * x^(dr-dd) * d
        std::vector<MPoly> nr(static_cast<size_t>(dr), MPoly(a.vars()));
        for (int i = 0; i < dr; ++i) {
            MPoly t = r[static_cast<size_t>(i)] * lc;
            int j = i - (dr - dd);
            if (j >= 0 && j <= dd) t = t - lead * dc[static_cast<size_t>(j)];
            nr[static_cast<size_t>(i)] = t;
            guard_size(t, step);
        }
        while (!nr.empty() && nr.back().is_zero()) nr.pop_back();
        r = std::move(nr);
        --e;
        if (r.empty()) break;
    }
    MPoly result = MPoly::from_coeffs_in(v, r, a.vars());
    if (e > 0) {
        MPoly scale = lc.pow(static_cast<unsigned>(e));
        result = result * scale;
        guard_size(result, step);
    }
    return result;
}

// Subresultant PRS resultant of a and b with respect to variable v.
inline MPoly mpoly_resultant(const MPoly& a, const MPoly& b, size_t v, const std::string& step) {
    unsigned da = a.degree_in(v), db = b.degree_in(v);
    if (a.is_zero() || b.is_zero()) return MPoly::constant(a.vars(), BigInt(0));
    if (da == 0 && db == 0) return MPoly::constant(a.vars(), BigInt(1));
    if (da == 0) return a.pow(db);
    if (db == 0) return b.pow(da);

    MPoly A = a, B = b;
    int s = 1;
    if (da < db) {
        if ((da % 2) && (db % 2)) s = -s;
        std::swap(A, B);
    }
    MPoly g = MPoly::constant(a.vars(), BigInt(1));
    MPoly h = g;
    while (B.degree_in(v) > 0 || !B.is_zero()) {
        unsigned dA = A.degree_in(v), dB = B.degree_in(v);
        if (dB == 0) break;
        int delta = static_cast<int>(dA) - static_cast<int>(dB);
        if ((dA % 2) && (dB % 2)) s = -s;
        MPoly R = mpoly_prem(A, B, v, step);
        A = B;
        MPoly denom = g * h.pow(static_cast<unsigned>(delta));
        B = R.divexact(denom);
        guard_size(B, step);
        g = A.coeffs_in(v).back();
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            h = g.pow(static_cast<unsigned>(delta)).divexact(h.pow(static_cast<unsigned>(delta - 1)));
        }
    }
    if (B.is_zero()) return MPoly::constant(a.vars(), BigInt(0));
    unsigned dA = A.degree_in(v);
    MPoly res;
    if (dA == 1) {
        res = B;
    } else {
        res = B.pow(dA).divexact(h.pow(dA - 1));
    }
    guard_size(res, step);
    return s < 0 ? -res : res;
}

} // namespace detail

struct EliminationResult {
    std::vector<MPoly> polys;       // in the kept variables only
    std::vector<BigInt> constants;  // integer contents stripped along the way
};

// Eliminate the given variables from the system. Order: the caller's list is
// processed front to back (innermost first); the default family order is
// c, b, a, t. Presolve substitutes variables that some equation pins down
// with a unit coefficient, which is exact; the remaining steps use
// resultants, which are sound but not complete.
struct EliminateOptions {
    // keep at most this many polynomials after each elimination level,
    // preferring small ones; dropping polynomials keeps the output sound
    // (the variety only grows)
    size_t fanout_cap = SIZE_MAX;
};

inline EliminationResult eliminate_variables(std::vector<MPoly> system,
                                             const std::vector<std::string>& kill_order,
                                             const EliminateOptions& eopt = {}) {
    if (system.empty()) throw std::invalid_argument("eliminate: empty system");
    VarTablePtr vars = system.front().vars();
    EliminationResult out;

    auto strip_content = [&](MPoly p) {
        if (p.is_zero()) return p;
        BigInt c = p.content();
        if (!c.is_one() && !c.is_zero()) {
            out.constants.push_back(c);
            p = p.divexact_scalar(c);
        }
        return p;
    };

    // drop zeros, strip contents
    {
        std::vector<MPoly> cleaned;
        for (auto& p : system)
            if (!p.is_zero()) cleaned.push_back(strip_content(std::move(p)));
        system = std::move(cleaned);
    }

    for (const auto& vname : kill_order) {
        size_t v = MPoly::index_of(*vars, vname);
        std::string step = "eliminate " + vname;

        std::vector<MPoly> with_v, without_v;
        for (auto& p : system) (p.involves(v) ? with_v : without_v).push_back(p);
        if (with_v.empty()) {
            system = std::move(without_v);
            continue;
        }

        // Presolve: an equation of the form u*v + rest with u = ±1 constant
        // pins v exactly; substitution is sound and complete.
        int pin = -1;
        MPoly replacement;
        for (size_t i = 0; i < with_v.size(); ++i) {
            if (with_v[i].degree_in(v) != 1) continue;
            auto cs = with_v[i].coeffs_in(v);
            if (!cs[1].is_constant()) continue;
            BigInt u = cs[1].constant_value();
            if (u.is_one() || u == BigInt(-1)) {
                // v = -rest/u
                replacement = u.is_one() ? -cs[0] : cs[0];
                pin = static_cast<int>(i);
                break;
            }
        }

        std::vector<MPoly> next = std::move(without_v);
        if (pin >= 0) {
            for (size_t i = 0; i < with_v.size(); ++i) {
                if (static_cast<int>(i) == pin) continue;
                MPoly sub = with_v[i].substitute(v, replacement);
                detail::guard_size(sub, step);
                if (!sub.is_zero()) next.push_back(strip_content(std::move(sub)));
            }
        } else {
            // pivot: minimal positive degree in v
            size_t piv = 0;
            for (size_t i = 1; i < with_v.size(); ++i)
                if (with_v[i].degree_in(v) < with_v[piv].degree_in(v)) piv = i;
            bool any_nonzero = false;
            for (size_t i = 0; i < with_v.size(); ++i) {
                if (i == piv) continue;
                MPoly r = detail::mpoly_resultant(with_v[piv], with_v[i], v, step);
                if (!r.is_zero()) {
                    any_nonzero = true;
                    next.push_back(strip_content(std::move(r)));
                }
            }
            if (!any_nonzero && next.empty())
                throw DegenerateElimination("eliminate: all resultants vanish at " + step);
        }
        if (next.size() > eopt.fanout_cap) {
            std::stable_sort(next.begin(), next.end(), [](const MPoly& a, const MPoly& b) {
                return a.term_count() < b.term_count();
            });
            // constants always survive the cut
            std::vector<MPoly> kept;
            for (const auto& q : next)
                if (q.is_constant()) kept.push_back(q);
            for (const auto& q : next) {
                if (kept.size() >= eopt.fanout_cap) break;
                if (!q.is_constant()) kept.push_back(q);
            }
            next = std::move(kept);
        }
        system = std::move(next);
        if (system.empty()) break;
    }

    // Deduplicate
    for (auto& p : system) {
        bool seen = false;
        for (const auto& q : out.polys)
            if (p == q) seen = true;
        if (!seen) out.polys.push_back(p);
    }
    return out;
}

// Spec-facing wrapper: eliminate everything not in `keep`, default order
// c, b, a, t first (innermost first), any remaining variables after.
inline EliminationResult eliminate(const std::vector<MPoly>& system,
                                   const std::set<std::string>& keep) {
    if (system.empty()) throw std::invalid_argument("eliminate: empty system");
    VarTablePtr vars = system.front().vars();
    std::vector<std::string> order;
    for (const char* pref : {"c", "b", "a", "t"}) {
        for (const auto& name : *vars)
            if (name == pref && !keep.count(name)) order.push_back(name);
    }
    for (const auto& name : *vars) {
        if (keep.count(name)) continue;
        if (std::find(order.begin(), order.end(), name) != order.end()) continue;
        bool used = false;
        for (const auto& p : system)
            if (p.involves(MPoly::index_of(*vars, name))) used = true;
        if (used) order.push_back(name);
    }
    return eliminate_variables(system, order);
}

} // namespace intersective
