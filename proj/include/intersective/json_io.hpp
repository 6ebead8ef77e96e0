#pragma once

#include <json.hpp>

#include <fstream>
#include <string>

#include "intersective/certify.hpp"
#include "intersective/families.hpp"
#include "intersective/intpoly.hpp"
#include "intersective/newton_polygon.hpp"
#include "intersective/padic_roots.hpp"
#include "intersective/parampoly.hpp"
#include "intersective/permgroup.hpp"

namespace intersective {

using Json = nlohmann::json;

// Integers serialize as decimal strings everywhere: no precision loss.

// --- polynomials ------------------------------------------------------------
// {"var": "x", "coeffs": ["<decimal>", ...]} ascending

inline Json poly_to_json(const IntPoly& f, const std::string& var = "x") {
    Json j;
    j["var"] = var;
    Json coeffs = Json::array();
    for (int i = 0; i <= f.degree(); ++i) coeffs.push_back(f.coeff(static_cast<size_t>(i)).to_string());
    if (f.is_zero()) coeffs.push_back("0");
    j["coeffs"] = coeffs;
    return j;
}

inline IntPoly poly_from_json(const Json& j) {
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
        throw std::invalid_argument("polynomial JSON: missing coeffs array");
    std::vector<BigInt> c;
    for (const auto& v : j["coeffs"]) c.emplace_back(v.get<std::string>());
    return IntPoly(std::move(c));
}

// ParamPoly: {"var":"x","params":[...],"coeffs":[{"<monomial>":"<decimal>"},...]}
// where coeffs[i] maps parameter monomials ("" for 1, "a^2*t", ...) to the
// coefficient of x^i.

inline std::string monomial_key(const VarTable& vars, const MPoly::Expo& e) {
    std::string key;
    for (size_t i = 1; i < e.size(); ++i) { // skip x
        if (!e[i]) continue;
        if (!key.empty()) key += "*";
        key += vars[i];
        if (e[i] > 1) key += "^" + std::to_string(e[i]);
    }
    return key;
}

inline Json parampoly_to_json(const ParamPoly& F) {
    Json j;
    j["var"] = (*F.vars)[0];
    Json params = Json::array();
    for (size_t i = 1; i < F.vars->size(); ++i) params.push_back((*F.vars)[i]);
    j["params"] = params;
    Json coeffs = Json::array();
    auto xc = F.x_coefficients();
    for (const auto& c : xc) {
        Json entry = Json::object();
        for (const auto& [e, v] : c.terms()) entry[monomial_key(*F.vars, e)] = v.to_string();
        coeffs.push_back(entry);
    }
    j["coeffs"] = coeffs;
    return j;
}

inline ParamPoly parampoly_from_json(const Json& j) {
    std::vector<std::string> names{j.value("var", "x")};
    for (const auto& p : j.at("params")) names.push_back(p.get<std::string>());
    auto vars = make_vars(names);
    MPoly poly(vars);
    const auto& coeffs = j.at("coeffs");
    for (size_t d = 0; d < coeffs.size(); ++d) {
        for (auto it = coeffs[d].begin(); it != coeffs[d].end(); ++it) {
            MPoly mono = MPoly::constant(vars, BigInt(it.value().get<std::string>()));
            mono = mono * MPoly::var(vars, size_t(0), static_cast<unsigned>(d));
            // parse "a^2*t" style keys
            const std::string& key = it.key();
            size_t pos = 0;
            while (pos < key.size()) {
                size_t star = key.find('*', pos);
                std::string part = key.substr(pos, star == std::string::npos ? star : star - pos);
                pos = star == std::string::npos ? key.size() : star + 1;
                if (part.empty()) continue;
                size_t caret = part.find('^');
                std::string name = part.substr(0, caret);
                unsigned exp = caret == std::string::npos
                                   ? 1
                                   : static_cast<unsigned>(std::stoul(part.substr(caret + 1)));
                mono = mono * MPoly::var(vars, name, exp);
            }
            poly = poly + mono;
        }
    }
    return ParamPoly(poly);
}

// --- groups -----------------------------------------------------------------
// {"degree": n, "generators": [[[0,1,2],[3,4]], ...], "name": "..."}
// generators are cycle lists on 0-based points

inline Json group_to_json(const PermGroup& G) {
    Json j;
    j["degree"] = G.degree();
    j["name"] = G.name();
    Json gens = Json::array();
    for (const auto& g : G.generators()) {
        Json cycles = Json::array();
        for (const auto& cyc : g.cycles()) {
            Json c = Json::array();
            for (auto pt : cyc) c.push_back(pt);
            cycles.push_back(c);
        }
        gens.push_back(cycles);
    }
    j["generators"] = gens;
    return j;
}

inline PermGroup group_from_json(const Json& j, size_t cap = 100000) {
    unsigned degree = j.at("degree").get<unsigned>();
    std::vector<Perm> gens;
    for (const auto& gen : j.at("generators")) {
        std::vector<std::vector<uint16_t>> cycles;
        for (const auto& cyc : gen) {
            std::vector<uint16_t> c;
            for (const auto& pt : cyc) c.push_back(pt.get<uint16_t>());
            cycles.push_back(c);
        }
        gens.push_back(Perm::from_cycles(degree, cycles));
    }
    return PermGroup::generate(j.value("name", "group"), degree, gens, cap);
}

// --- p-adic reports ----------------------------------------------------------
// {"p": "...", "distinct_roots": n, "witnesses": [{"mod": "p^k", "value": "..."}],
//  "method": "hensel"|"rational"|"exhausted"}

inline Json padic_report_to_json(const PadicRootReport& rep) {
    Json j;
    j["p"] = rep.p.to_string();
    j["distinct_roots"] = rep.distinct_roots;
    j["with_multiplicity"] = rep.with_multiplicity;
    j["method"] = rep.method;
    Json ws = Json::array();
    for (const auto& w : rep.witnesses) {
        Json jw;
        jw["mod"] = rep.p.to_string() + "^" + std::to_string(w.precision);
        jw["value"] = w.value.to_string();
        jw["method"] = w.method;
        ws.push_back(jw);
    }
    j["witnesses"] = ws;
    if (rep.distinct_roots == 0) j["refutation_depth"] = rep.refutation_depth;
    return j;
}

// --- newton polygons ----------------------------------------------------------

inline Json polygon_to_json(const NewtonPolygon& np) {
    Json j;
    j["p"] = np.p.to_string();
    j["stripped_x_power"] = np.stripped_x_power;
    Json vs = Json::array();
    for (const auto& v : np.vertices) vs.push_back(Json::array({v.index, v.valuation}));
    j["vertices"] = vs;
    Json segs = Json::array();
    for (const auto& s : np.segments) {
        Json js;
        js["start"] = s.start;
        js["end"] = s.end;
        js["slope"] = s.slope.to_string();
        js["root_valuation"] = s.root_valuation().to_string();
        js["length"] = s.length();
        segs.push_back(js);
    }
    j["segments"] = segs;
    return j;
}

// --- certificates --------------------------------------------------------------

inline Json evidence_to_json(const PrimeEvidence& ev) {
    Json j;
    j["p"] = ev.p.to_string();
    j["method"] = ev.method;
    Json w = Json::object();
    if (ev.method == "rational-root" || ev.method == "hensel-root") {
        w["factor"] = ev.factor_index;
        w["value"] = ev.witness.value.to_string();
        w["mod"] = ev.p.to_string() + "^" + std::to_string(ev.witness.precision);
    } else if (ev.method == "newton-polygon-linear-segment") {
        w["factor"] = ev.factor_index;
        w["root_valuation"] = ev.segment_valuation.to_string();
    } else if (ev.method == "exhausted-no-root") {
        Json depths = Json::array();
        for (auto d : ev.refutation_depths) depths.push_back(d);
        w["refutation_depths"] = depths;
    }
    j["witness"] = w;
    return j;
}

inline PrimeEvidence evidence_from_json(const Json& j) {
    PrimeEvidence ev;
    ev.p = BigInt(j.at("p").get<std::string>());
    ev.method = j.at("method").get<std::string>();
    const Json& w = j.at("witness");
    if (ev.method == "rational-root" || ev.method == "hensel-root") {
        ev.factor_index = w.at("factor").get<int>();
        ev.witness.value = BigInt(w.at("value").get<std::string>());
        std::string mod = w.at("mod").get<std::string>();
        auto caret = mod.find('^');
        ev.witness.precision = static_cast<unsigned>(std::stoul(mod.substr(caret + 1)));
        ev.witness.method = ev.method == "rational-root" ? "rational" : "hensel";
    } else if (ev.method == "newton-polygon-linear-segment") {
        ev.factor_index = w.at("factor").get<int>();
        ev.segment_valuation = Rational(w.at("root_valuation").get<std::string>());
    } else if (ev.method == "exhausted-no-root") {
        for (const auto& d : w.at("refutation_depths"))
            ev.refutation_depths.push_back(d.get<unsigned>());
    }
    return ev;
}

inline Json certificate_to_json(const IntersectivityCertificate& cert) {
    Json j;
    Json factors = Json::array();
    for (const auto& f : cert.factors) factors.push_back(poly_to_json(f));
    j["factors"] = factors;
    j["group"] = cert.group_name;
    Json covering;
    covering["valid"] = cert.covering_valid;
    covering["core_trivial"] = cert.core_trivial;
    covering["group_unconditional"] = cert.group_unconditional;
    covering["frobenius_consistent"] = cert.frobenius_consistent;
    covering["frobenius_primes_checked"] = cert.frobenius_primes_checked;
    j["covering"] = covering;
    Json primes = Json::array();
    for (const auto& ev : cert.primes) primes.push_back(evidence_to_json(ev));
    j["primes"] = primes;
    Json support = Json::array();
    for (const auto& p : cert.bad_prime_support) support.push_back(p.to_string());
    j["bad_prime_support"] = support;
    j["verdict"] = cert.verdict;
    j["detail"] = cert.detail;
    if (cert.verdict == "refuted" && !cert.refuted_at.is_zero())
        j["refuted_at"] = cert.refuted_at.to_string();
    return j;
}

inline Json covering_certificate_to_json(const CoveringCertificate& cert) {
    Json j;
    j["group"] = cert.group_name;
    Json orders = Json::array();
    for (auto o : cert.subgroup_orders) orders.push_back(o);
    j["subgroup_orders"] = orders;
    j["covered"] = cert.covered;
    j["core_trivial"] = cert.core_trivial;
    Json assign = Json::array();
    for (size_t c = 0; c < cert.class_assignment.size(); ++c) {
        Json e;
        e["class"] = c;
        e["representative_element"] = cert.class_reps[c];
        e["covered_by"] = cert.class_assignment[c];
        assign.push_back(e);
    }
    j["class_assignment"] = assign;
    if (!cert.covered) j["uncovered_element"] = cert.uncovered_element;
    return j;
}

inline Json family_report_to_json(const FamilyReport& rep) {
    Json j;
    j["family"] = rep.family;
    Json spec = Json::object();
    for (const auto& [k, v] : rep.specialization) spec[k] = v.to_string();
    j["specialization"] = spec;
    j["predicate_ok"] = rep.predicate_ok;
    j["all_passed"] = rep.all_passed;
    Json steps = Json::array();
    for (const auto& s : rep.steps) {
        Json js;
        js["id"] = s.id;
        js["description"] = s.description;
        js["passed"] = s.passed;
        js["evidence"] = s.evidence;
        steps.push_back(js);
    }
    j["steps"] = steps;
    if (!rep.certificate.verdict.empty()) j["certificate"] = certificate_to_json(rep.certificate);
    return j;
}

// --- file helpers ---------------------------------------------------------------

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

inline void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace intersective
