// Batch front end: parse a JSON system descriptor, dispatch one computation,
// emit machine-readable output (exact rationals as num/den strings, interval
// enclosures as [lo, hi] decimal pairs).

#include "fad/json_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace fad;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw argument_error("cannot open output file: " + out_path);
        out << text << "\n";
    }
}

std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("--range must be A..B");
    return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
}

int digits_for(long precision_bits) { return std::max(6, static_cast<int>(precision_bits * 30 / 100)); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fadtool: fixed-point counts, FAD parameters, zeta functions and orbit statistics"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string input, output, format = "json", range_str;
    long n = 0, maxN = 0, precision = 128, budget = 4;
    app.add_option("--input", input, "descriptor JSON file")->expected(1);
    app.add_option("--output", output, "output file (default stdout)");
    app.add_option("--n", n, "index n");
    app.add_option("--range", range_str, "index range A..B");
    app.add_option("--max", maxN, "maximum index N");
    app.add_option("--precision", precision, "enclosure precision in bits");
    app.add_option("--budget", budget, "oracle budget (field-extension degree)");
    app.add_option("--format", format, "output format: json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* c_fix = app.add_subcommand("fixcount", "fixed-point counts f(n)");
    auto* c_fad = app.add_subcommand("fad", "canonical FAD parameters");
    auto* c_zeta = app.add_subcommand("zeta", "dynamical zeta function");
    bool closed_only = false;
    c_zeta->add_flag("--closed", closed_only, "print only the closed form");
    auto* c_orb = app.add_subcommand("orbits", "orbit counts P_l, pi, Pi");
    auto* c_cls = app.add_subcommand("classify", "accumulation set and error exponent");
    auto* c_det = app.add_subcommand("detector", "detector group structure");
    auto* c_rea = app.add_subcommand("realizable", "bounded realizability check");
    std::string oracle_mode = "auto";
    auto* c_ora = app.add_subcommand("oracle", "brute-force oracle count");
    c_ora->add_option("--mode", oracle_mode, "torus oracle mode: snf or enumerate");
    auto* c_plot = app.add_subcommand("plot", "CSV of N, pi, Pi enclosures");
    auto* c_eqv = app.add_subcommand("equiv", "torus zeta-equality classification");
    for (auto* sub : {c_fix, c_fad, c_zeta, c_orb, c_cls, c_det, c_rea, c_ora, c_plot, c_eqv})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (input.empty()) throw CLI::ValidationError("--input is required");
        ParsedInput parsed = parse_descriptor_text(slurp(input));

        if (c_eqv->parsed()) {
            if (!parsed.is_pair) throw argument_error("equiv expects a torus_pair descriptor");
            TorusEquivalence v = torus_zeta_equivalence(parsed.pair.p, parsed.pair.m1, parsed.pair.m2);
            const char* s = v == TorusEquivalence::EquivariantlyIsogenous ? "equivariantly_isogenous"
                            : v == TorusEquivalence::TimeReversedIsogenous ? "time_reversed_isogenous"
                                                                           : "distinct";
            emit(output, json{{"verdict", s}}.dump());
            return 0;
        }
        if (parsed.is_pair) throw argument_error("torus_pair input is only valid for equiv");

        if (c_ora->parsed()) {
            if (n < 1) throw CLI::ValidationError("oracle requires --n");
            Int count(0);
            if (std::holds_alternative<TorusDesc>(parsed.desc)) {
                const auto& d = std::get<TorusDesc>(parsed.desc);
                auto mode = (oracle_mode == "enumerate") ? TorusOracleMode::Enumerate : TorusOracleMode::Snf;
                count = torus_oracle(d.p, d.M, n, mode, budget);
            } else if (std::holds_alternative<VectorGroupDesc>(parsed.desc)) {
                const auto& d = std::get<VectorGroupDesc>(parsed.desc);
                auto F = std::make_shared<const FqField>(d.p, d.nu,
                                                         d.modulus.empty() ? FqField::default_modulus(d.p, d.nu)
                                                                           : d.modulus);
                TwistedMatrix sigma = decode_twisted(F, d.sigma);
                // saturation needs a divisor-closed chain: counts over
                // F_{q^M} and F_{q^{M+1}} are incomparable
                Int best(0);
                for (long Mf : {1L, 2L, 3L, 4L, 6L, 8L, 12L, 16L, 24L, 32L}) {
                    if (Mf > budget) break;
                    Int cur = vector_group_oracle(d.p, d.nu, F->modulus, sigma, n, Mf);
                    if (cur > best) best = cur;
                }
                count = best;
            } else if (std::holds_alternative<CADesc>(parsed.desc)) {
                const auto& d = std::get<CADesc>(parsed.desc);
                count = ca_oracle(d.p, d.laurent, n);
            } else if (std::holds_alternative<EllipticDesc>(parsed.desc)) {
                const auto& d = std::get<EllipticDesc>(parsed.desc);
                // fixed testing curves: ordinary y^2=x^3+x^2+1, supersingular y^2=x^3-x
                count = d.ordinary ? elliptic_oracle(d.p, 1, 0, 1, d.m, n)
                                   : elliptic_oracle(d.p, 0, -1, 0, d.m, n);
            } else {
                throw argument_error("oracle: unsupported descriptor kind");
            }
            emit(output, json{{"n", std::to_string(n)}, {"count", count.get_str()}}.dump());
            return 0;
        }

        FixedPointReport rep = build_system(parsed.desc);

        if (c_fix->parsed()) {
            std::vector<long> ns;
            if (!range_str.empty()) {
                auto [a, b] = parse_range(range_str);
                for (long i = a; i <= b; ++i) ns.push_back(i);
            } else if (n >= 1) {
                ns.push_back(n);
            } else {
                throw CLI::ValidationError("fixcount requires --n or --range");
            }
            std::vector<Int> vals(ns.size());
#pragma omp parallel for schedule(dynamic)
            for (long i = 0; i < static_cast<long>(ns.size()); ++i)
                vals[static_cast<size_t>(i)] = fad_eval_int(rep.params, ns[static_cast<size_t>(i)]);
            if (format == "csv") {
                std::ostringstream ss;
                ss << "n,f\n";
                for (size_t i = 0; i < ns.size(); ++i) ss << ns[i] << "," << vals[i].get_str() << "\n";
                emit(output, ss.str());
            } else {
                json arr = json::array();
                for (size_t i = 0; i < ns.size(); ++i)
                    arr.push_back(json{{"n", std::to_string(ns[i])}, {"f", vals[i].get_str()}});
                emit(output, (ns.size() == 1 ? arr[0] : json{{"values", arr}}).dump());
            }
            return 0;
        }
        if (c_fad->parsed()) {
            emit(output, params_to_json(rep.params));
            return 0;
        }
        if (c_zeta->parsed()) {
            ZetaForm zf = zeta_build(rep.params);
            if (closed_only) {
                emit(output, zeta_form_to_string(zf));
                return 0;
            }
            json j;
            j["kind"] = zf.kind == ZetaKind::Rational       ? "rational"
                        : zf.kind == ZetaKind::RootRational ? "root_rational"
                        : zf.kind == ZetaKind::ProductForm  ? "product"
                                                            : "non_holonomic";
            if (zf.kind == ZetaKind::Rational || zf.kind == ZetaKind::RootRational) {
                j["closed"] = zeta_form_to_string(zf);
                j["root_index"] = std::to_string(zf.root_index);
                json fac = json::array();
                for (auto& f : zf.factors)
                    fac.push_back(json{{"Q", to_string(f.Q, "z")}, {"e", to_string(f.e)}});
                j["factors"] = fac;
            } else {
                j["natural_boundary"] = zf.natural_boundary;
                json ser = json::array();
                for (auto& cff : zf.series_prefix) ser.push_back(to_string(cff));
                j["series_prefix"] = ser;
            }
            emit(output, j.dump());
            return 0;
        }
        if (c_orb->parsed()) {
            if (maxN < 1) throw CLI::ValidationError("orbits requires --max");
            OrbitReport orep = orbit_counts(rep.params, maxN, true,
                                            static_cast<mpfr_prec_t>(precision));
            json arr = json::array();
            for (long ell = 1; ell <= maxN; ++ell)
                arr.push_back(json{{"l", std::to_string(ell)},
                                   {"P", orep.P[static_cast<size_t>(ell)].get_str()},
                                   {"pi", orep.pi[static_cast<size_t>(ell)].get_str()},
                                   {"Pi", orep.Pi[static_cast<size_t>(ell)].str(digits_for(precision))}});
            emit(output, json{{"orbits", arr}}.dump());
            return 0;
        }
        if (c_cls->parsed()) {
            AccumulationResult ac = classify_accumulation(rep.params, static_cast<mpfr_prec_t>(precision));
            ThetaResult th = theta(rep.params, static_cast<mpfr_prec_t>(precision));
            DominantData dd = dominant_data(rep.params.handle, rep.params.c,
                                            static_cast<mpfr_prec_t>(precision));
            json j;
            j["accumulation"] = ac.cls == AccumulationClass::Finite              ? "finite"
                                : ac.cls == AccumulationClass::FiniteUnionCantor ? "finite_union_cantor"
                                : ac.cls == AccumulationClass::ContainsInterval  ? "contains_interval"
                                                                                 : "unknown_mixed_case";
            if (!ac.limits.empty()) {
                json lims = json::array();
                for (auto& L : ac.limits) lims.push_back(L.str(digits_for(precision)));
                j["limits"] = lims;
                if (!ac.limits_exact.empty()) {
                    json ex = json::array();
                    for (auto& L : ac.limits_exact) ex.push_back(to_string(L));
                    j["limits_exact"] = ex;
                }
            }
            j["theta_prime"] = th.theta_prime.is_rational ? json(to_string(th.theta_prime.value))
                                                          : json(th.theta_prime.enclosure.str(digits_for(precision)));
            j["theta"] = th.theta.is_rational ? json(to_string(th.theta.value))
                                              : json(th.theta.enclosure.str(digits_for(precision)));
            j["delta"] = std::to_string(dd.delta);
            j["hyperbolic"] = dd.hyperbolic;
            j["entropy"] = dd.entropy.str(digits_for(precision));
            emit(output, j.dump());
            return 0;
        }
        if (c_det->parsed()) {
            DetectorDescriptor d = detector_structure(rep.params);
            emit(output, detector_to_json(d));
            return 0;
        }
        if (c_rea->parsed()) {
            if (maxN < 1) throw CLI::ValidationError("realizable requires --max");
            auto f = [&](long k) { return rep.direct(k); };
            RealizableVerdict v = realizable_check(f, maxN);
            json j{{"pass", v.pass}};
            if (!v.pass) {
                j["witness"] = std::to_string(v.witness);
                j["reason"] = v.reason;
            }
            emit(output, j.dump());
            return 0;
        }
        if (c_plot->parsed()) {
            if (maxN < 1) throw CLI::ValidationError("plot requires --max");
            OrbitReport orep = orbit_counts(rep.params, maxN, true,
                                            static_cast<mpfr_prec_t>(precision));
            std::ostringstream ss;
            ss << "N,pi,Pi_lo,Pi_hi\n";
            int dg = digits_for(precision);
            for (long N = 1; N <= maxN; ++N) {
                std::string pi_s = orep.Pi[static_cast<size_t>(N)].str(dg);
                // str() renders "[lo, hi]"
                auto comma = pi_s.find(", ");
                std::string lo = pi_s.substr(1, comma - 1);
                std::string hi = pi_s.substr(comma + 2, pi_s.size() - comma - 3);
                ss << N << "," << orep.pi[static_cast<size_t>(N)].get_str() << "," << lo << "," << hi << "\n";
            }
            emit(output, ss.str());
            return 0;
        }
        throw CLI::ValidationError("no subcommand");
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::string(e.what()).find("descriptor:") == 0 ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
