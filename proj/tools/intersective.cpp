// Command-line front end: certification pipeline, p-adic root reports,
// Newton polygons, factorization, group checks, and family replication.
//
// Exit codes: 0 success/certified, 2 usage error, 3 inconclusive,
// 4 refuted, 5 resource limit.

#include <CLI11.hpp>

#include <cstdlib>
#include <future>
#include <iostream>
#include <string>

#include <intersective/certify.hpp>
#include <intersective/covering.hpp>
#include <intersective/factor_zz.hpp>
#include <intersective/families.hpp>
#include <intersective/json_io.hpp>
#include <intersective/named_groups.hpp>
#include <intersective/newton_polygon.hpp>
#include <intersective/padic_roots.hpp>

using namespace intersective;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitRefuted = 4;
constexpr int kExitResource = 5;

uint64_t env_or(const char* name, uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    return std::strtoull(v, nullptr, 10);
}

struct CommonOpts {
    std::string format = "text";
    uint64_t seed = 0;
    uint64_t budget = 10000000;
    uint64_t prime_bound = 10000;
    unsigned jobs = 1;
};

void emit(const CommonOpts& opts, const Json& j, const std::string& text) {
    if (opts.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string verdict_text(const IntersectivityCertificate& cert) {
    std::string s;
    s += "verdict: " + cert.verdict + "\n";
    s += "  group: " + cert.group_name +
         (cert.group_unconditional ? " (derived, unconditional)" : " (claimed)") + "\n";
    if (!cert.detail.empty()) s += "  " + cert.detail + "\n";
    s += "  bad primes:";
    for (const auto& p : cert.bad_prime_support) s += " " + p.to_string();
    s += "\n";
    for (const auto& ev : cert.primes) {
        s += "  p = " + ev.p.to_string() + ": " + ev.method;
        if (ev.factor_index >= 0) s += " (factor " + std::to_string(ev.factor_index) + ")";
        s += "\n";
    }
    return s;
}

int verdict_exit(const std::string& verdict) {
    if (verdict == "certified" || verdict == "certified-conditional-on-group") return kExitOk;
    if (verdict == "refuted") return kExitRefuted;
    return kExitInconclusive;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"intersective: p-adic root certification for integer polynomials"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    CommonOpts opts;
    opts.seed = env_or("INTERSECTIVE_SEED", 0);
    opts.budget = env_or("INTERSECTIVE_BUDGET", 10000000);
    app.add_option("--format", opts.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", opts.seed, "seed for randomized routines (default 0)");
    app.add_option("--budget", opts.budget, "Pollard rho iteration budget (default 10^7)");
    app.add_option("--prime-bound", opts.prime_bound, "Frobenius screening bound (default 10^4)");
    app.add_option("--jobs", opts.jobs, "parallel per-prime fan-out (deterministic merge)")
        ->check(CLI::PositiveNumber);

    auto* certify = app.add_subcommand("certify", "certify intersectivity of a factor list");
    std::vector<std::string> poly_paths;
    std::string group_name = "auto";
    certify->add_option("--poly", poly_paths, "polynomial file (repeat per factor)")->required();
    certify->add_option("--group", group_name,
                        "claimed group name, 'auto' (multiquadratic), or 'none'");

    auto* padic = app.add_subcommand("padic-roots", "count roots in Z_p with witnesses");
    std::string padic_poly;
    std::string padic_prime;
    padic->add_option("--poly", padic_poly, "polynomial file")->required();
    padic->add_option("--prime", padic_prime, "prime p")->required();

    auto* newton = app.add_subcommand("newton", "Newton polygon of a polynomial at p");
    std::string newton_poly, newton_prime, newton_shift = "0";
    newton->add_option("--poly", newton_poly, "polynomial file")->required();
    newton->add_option("--prime", newton_prime, "prime p")->required();
    newton->add_option("--shift", newton_shift, "take the polygon of f(x + shift)");

    auto* factor = app.add_subcommand("factor", "factor over Z (polynomial) or factor an integer");
    std::string factor_poly, factor_int;
    factor->add_option("--poly", factor_poly, "polynomial file");
    factor->add_option("--int", factor_int, "integer to factor");

    auto* group = app.add_subcommand("group", "group-theoretic checks");
    group->require_subcommand(1);
    auto* gcover = group->add_subcommand("cover", "2-covering check for a named group");
    auto* gmeta = group->add_subcommand("metacyclic", "metacyclic-subgroup covering check");
    auto* gsubs = group->add_subcommand("subgroups", "subgroup enumeration up to conjugacy");
    std::string gname;
    bool solvable_only = false;
    uint64_t order_bound = 0;
    for (auto* sub : {gcover, gmeta, gsubs})
        sub->add_option("--name", gname, "group name (pgl2_7, psl3_2, agl2_3, m11, ...)")
            ->required();
    gsubs->add_flag("--solvable-only", solvable_only, "restricted mode: solvable subgroups only");
    gsubs->add_option("--order-bound", order_bound, "order bound for the restricted mode");

    auto* family = app.add_subcommand("family", "embedded families");
    family->require_subcommand(1);
    auto* fverify = family->add_subcommand("verify", "replicate a family's proof steps");
    auto* fexport = family->add_subcommand("export", "write family polynomials as JSON");
    auto* flist = family->add_subcommand("list", "catalog of embedded families");
    std::string fname;
    std::string t_str = "1", a_str = "1", b_str = "1", c_str = "1";
    std::string out_dir = ".";
    for (auto* sub : {fverify, fexport})
        sub->add_option("--name", fname, "family name: psl3_2, pgammal2_8, m11")->required();
    fverify->add_option("--t", t_str, "specialization of t");
    fverify->add_option("--a", a_str, "specialization of a (psl3_2)");
    fverify->add_option("--b", b_str, "specialization of b (psl3_2)");
    fverify->add_option("--c", c_str, "specialization of c (psl3_2)");
    fexport->add_option("--t", t_str, "specialization of t (exported alongside the family)");
    fexport->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*certify) {
            std::vector<IntPoly> factors;
            for (const auto& path : poly_paths) factors.push_back(poly_from_json(load_json(path)));
            CertifyOptions copt;
            copt.group_name = group_name;
            copt.seed = opts.seed;
            copt.factor_budget = opts.budget;
            copt.screening_bound = opts.prime_bound;
            copt.jobs = opts.jobs;
            NamedGroup ng;
            if (group_name != "auto" && group_name != "none" && !group_name.empty()) {
                ng = construct_named_group(group_name, opts.seed);
                copt.group = &ng;
                copt.group_name.clear();
            }
            IntersectivityCertificate cert = certify_intersective(factors, copt);
            emit(opts, certificate_to_json(cert), verdict_text(cert));
            return verdict_exit(cert.verdict);
        }
        if (*padic) {
            IntPoly f = poly_from_json(load_json(padic_poly));
            PadicRootReport rep = roots_in_Zp(f, BigInt(padic_prime), opts.seed);
            std::string text = "p = " + padic_prime + ": " +
                               std::to_string(rep.distinct_roots) + " distinct roots (" +
                               rep.method + ")\n";
            for (const auto& w : rep.witnesses)
                text += "  " + w.value.to_string() + " mod " + padic_prime + "^" +
                        std::to_string(w.precision) + " (" + w.method + ")\n";
            emit(opts, padic_report_to_json(rep), text);
            return kExitOk;
        }
        if (*newton) {
            IntPoly f = poly_from_json(load_json(newton_poly));
            BigInt shift(newton_shift);
            if (!shift.is_zero()) f = f.shift(shift);
            NewtonPolygon np = newton_polygon(f, BigInt(newton_prime));
            std::string text = "vertices:";
            for (const auto& v : np.vertices)
                text += " (" + std::to_string(v.index) + "," + std::to_string(v.valuation) + ")";
            text += "\nsegments:";
            for (const auto& s : np.segments)
                text += " [len " + std::to_string(s.length()) + ", slope " + s.slope.to_string() +
                        "]";
            text += "\n";
            if (np.stripped_x_power)
                text += "stripped x^" + std::to_string(np.stripped_x_power) +
                        " (roots of valuation infinity)\n";
            emit(opts, polygon_to_json(np), text);
            return kExitOk;
        }
        if (*factor) {
            if (!factor_int.empty()) {
                FactoredInt f = factor_integer(BigInt(factor_int), opts.budget, opts.seed);
                Json j;
                j["input"] = factor_int;
                j["sign"] = f.sign;
                Json fs = Json::array();
                std::string text = factor_int + " =";
                if (f.sign < 0) text += " -1 *";
                for (const auto& [p, e] : f.factors) {
                    Json e1;
                    e1["prime"] = p.to_string();
                    e1["exponent"] = e;
                    fs.push_back(e1);
                    text += " " + p.to_string() + "^" + std::to_string(e) + " *";
                }
                j["factors"] = fs;
                j["cofactor"] = f.cofactor.to_string();
                text.pop_back();
                if (!f.complete()) text += " * [composite cofactor " + f.cofactor.to_string() + "]";
                emit(opts, j, text + "\n");
                return f.complete() ? kExitOk : kExitInconclusive;
            }
            if (factor_poly.empty()) {
                std::cerr << "factor: need --poly or --int\n";
                return kExitUsage;
            }
            IntPoly f = poly_from_json(load_json(factor_poly));
            auto fac = factor_over_Z(f, opts.seed);
            Json j;
            j["unit"] = fac.unit.to_string();
            Json fs = Json::array();
            std::string text;
            for (const auto& [g, m] : fac.factors) {
                Json e;
                e["poly"] = poly_to_json(g);
                e["multiplicity"] = m;
                fs.push_back(e);
                text += "(" + g.to_string() + ")";
                if (m > 1) text += "^" + std::to_string(m);
                text += " ";
            }
            j["factors"] = fs;
            emit(opts, j, text + "\n");
            return kExitOk;
        }
        if (*gcover) {
            NamedGroup ng = construct_named_group(gname, opts.seed);
            auto cert = check_k_covering(ng.group(), {ng.U1, ng.U2});
            std::string text = gname + ": " + (cert.covered ? "covered" : "NOT covered") +
                               (cert.core_trivial ? ", core trivial" : ", core NONtrivial") + "\n";
            text += "  |G| = " + std::to_string(ng.group().size()) +
                    ", |U1| = " + std::to_string(ng.U1.order()) +
                    ", |U2| = " + std::to_string(ng.U2.order()) + "\n";
            for (size_t c = 0; c < cert.class_assignment.size(); ++c)
                text += "  class " + std::to_string(c) + " -> U" +
                        std::to_string(cert.class_assignment[c] + 1) + "\n";
            emit(opts, covering_certificate_to_json(cert), text);
            return cert.valid() ? kExitOk : kExitRefuted;
        }
        if (*gmeta) {
            NamedGroup ng = construct_named_group(gname, opts.seed);
            auto rep = metacyclic_subgroups_covered(ng.group(), ng.U1, ng.U2);
            Json j;
            j["group"] = gname;
            j["all_covered"] = rep.all_covered;
            j["pairs_scanned"] = rep.pairs_scanned;
            j["exception_count"] = rep.exceptions.size();
            std::string text = gname + ": metacyclic subgroups " +
                               (rep.all_covered ? "all covered" : "NOT all covered") + " (" +
                               std::to_string(rep.pairs_scanned) + " generator pairs)\n";
            emit(opts, j, text);
            return rep.all_covered ? kExitOk : kExitRefuted;
        }
        if (*gsubs) {
            NamedGroup ng = construct_named_group(gname, opts.seed);
            SubgroupEnumerationOptions sopt;
            sopt.solvable_only = solvable_only;
            sopt.order_bound = order_bound;
            auto subs = enumerate_subgroups(ng.group(), &ng.U1, &ng.U2, sopt);
            Json arr = Json::array();
            std::string text;
            for (const auto& s : subs) {
                Json e;
                e["order"] = s.order;
                e["label"] = s.label;
                e["solvable"] = s.solvable;
                e["metacyclic"] = s.metacyclic;
                e["covered"] = s.covered;
                arr.push_back(e);
                text += s.label + " (order " + std::to_string(s.order) + ")" +
                        (s.solvable ? " solvable" : "") + (s.metacyclic ? " metacyclic" : "") +
                        (s.covered ? " covered" : " UNCOVERED") + "\n";
            }
            Json j;
            j["group"] = gname;
            j["subgroup_classes"] = arr;
            emit(opts, j, text);
            return kExitOk;
        }
        if (*flist) {
            Json arr = Json::array();
            std::string text;
            for (const auto& spec : list_families()) {
                Json e;
                e["name"] = spec.name;
                e["group"] = spec.group_name;
                e["degrees"] = Json::array({spec.degree_f, spec.degree_g});
                e["predicate"] = spec.predicate;
                e["notes"] = spec.notes;
                arr.push_back(e);
                text += spec.name + ": degrees (" + std::to_string(spec.degree_f) + ", " +
                        std::to_string(spec.degree_g) + "), group " + spec.group_name +
                        ", admissible: " + spec.predicate + "\n    " + spec.notes + "\n";
            }
            Json j;
            j["families"] = arr;
            emit(opts, j, text);
            return kExitOk;
        }
        if (*fverify) {
            std::map<std::string, BigInt> at{{"t", BigInt(t_str)}};
            if (fname == "psl3_2") {
                at["a"] = BigInt(a_str);
                at["b"] = BigInt(b_str);
                at["c"] = BigInt(c_str);
            }
            FamilyReport rep = verify_family(fname, at, opts.seed, opts.budget);
            std::string text = fname + " at t = " + t_str + ":\n";
            if (!rep.predicate_ok) text += "  warning: specialization violates the predicate\n";
            for (const auto& s : rep.steps)
                text += std::string("  [") + (s.passed ? "PASS" : "FAIL") + "] " + s.description +
                        " -- " + s.evidence + "\n";
            text += "  verdict: " + rep.certificate.verdict + "\n";
            emit(opts, family_report_to_json(rep), text);
            if (!rep.all_passed) return kExitRefuted;
            return verdict_exit(rep.certificate.verdict);
        }
        if (*fexport) {
            FamilySpec spec = family_spec(fname);
            save_json(out_dir + "/" + fname + "_f.json", parampoly_to_json(spec.f));
            save_json(out_dir + "/" + fname + "_g.json", parampoly_to_json(spec.g));
            std::map<std::string, BigInt> at{{"t", BigInt(t_str)}};
            if (fname == "psl3_2") {
                at["a"] = BigInt(1);
                at["b"] = BigInt(1);
                at["c"] = BigInt(1);
            }
            IntPoly f = specialize(spec.f, at);
            std::map<std::string, BigInt> at_t{{"t", BigInt(t_str)}};
            IntPoly g = specialize(spec.g, at_t);
            save_json(out_dir + "/" + fname + "_f_t" + t_str + ".json", poly_to_json(f));
            save_json(out_dir + "/" + fname + "_g_t" + t_str + ".json", poly_to_json(g));
            std::cout << "wrote " << fname << " parametric and specialized polynomials to "
                      << out_dir << "\n";
            return kExitOk;
        }
    } catch (const TooLarge& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const ResourceExhausted& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const EliminationBlowup& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
