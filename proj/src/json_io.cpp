#include "fad/json_io.hpp"

#include <json.hpp>

namespace fad {

using nlohmann::json;

namespace {

Int parse_int(const json& j, const char* what) {
    if (!j.is_string()) throw argument_error(std::string("descriptor: ") + what + " must be a decimal string");
    try {
        return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
        throw argument_error(std::string("descriptor: bad integer for ") + what);
    }
}

long parse_long(const json& j, const char* what) {
    Int v = parse_int(j, what);
    if (!v.fits_slong_p()) throw argument_error(std::string("descriptor: ") + what + " out of range");
    return v.get_si();
}

Rat parse_rat(const json& j, const char* what) {
    if (!j.is_string()) throw argument_error(std::string("descriptor: ") + what + " must be a string");
    std::string s = j.get<std::string>();
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw argument_error(std::string("descriptor: bad rational for ") + what);
    }
}

IntMatrix parse_matrix(const json& j, const char* what) {
    if (!j.is_array()) throw argument_error(std::string("descriptor: ") + what + " must be an array");
    std::vector<std::vector<Int>> rows;
    for (auto& row : j) {
        if (!row.is_array()) throw argument_error(std::string("descriptor: ") + what + " rows must be arrays");
        std::vector<Int> r;
        for (auto& e : row) r.push_back(parse_int(e, what));
        rows.push_back(std::move(r));
    }
    if (rows.empty()) return IntMatrix(0, 0);
    return IntMatrix::from_rows(rows);
}

json matrix_to_json(const IntMatrix& M) {
    json rows = json::array();
    for (long i = 0; i < M.rows; ++i) {
        json row = json::array();
        for (long j = 0; j < M.cols; ++j) row.push_back(M(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

json gcdseq_to_json(const GcdSeq& g) {
    json vals = json::object();
    for (auto& [d, v] : g.values()) vals[std::to_string(d)] = to_string(v);
    return json{{"period", std::to_string(g.period())}, {"values", vals}};
}

std::pair<long, std::map<long, Rat>> parse_gcdseq(const json& j, const char* what) {
    if (!j.is_object() || !j.contains("period") || !j.contains("values"))
        throw argument_error(std::string("descriptor: ") + what + " needs period and values");
    long per = parse_long(j.at("period"), what);
    std::map<long, Rat> vals;
    for (auto& [k, v] : j.at("values").items()) vals[std::stol(k)] = parse_rat(v, what);
    return {per, vals};
}

} // namespace

ParsedInput parse_descriptor_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw argument_error(std::string("descriptor: JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind"))
        throw argument_error("descriptor: top-level object with \"kind\" required");
    std::string kind = j.at("kind").get<std::string>();
    ParsedInput out;
    if (kind == "torus") {
        out.desc = TorusDesc{parse_long(j.at("p"), "p"), parse_matrix(j.at("matrix"), "matrix")};
    } else if (kind == "vector_group") {
        VectorGroupDesc d;
        d.p = parse_long(j.at("p"), "p");
        d.nu = parse_long(j.at("nu"), "nu");
        for (auto& c : j.at("modulus")) d.modulus.push_back(parse_long(c, "modulus"));
        for (auto& row : j.at("sigma")) {
            std::vector<TwistedPolyEnc> r;
            for (auto& entry : row) {
                TwistedPolyEnc e;
                for (auto& coords : entry) {
                    std::vector<long> cc;
                    for (auto& c : coords) cc.push_back(parse_long(c, "sigma"));
                    e.push_back(cc);
                }
                r.push_back(e);
            }
            d.sigma.push_back(r);
        }
        out.desc = std::move(d);
    } else if (kind == "s_integer") {
        SIntegerDesc d;
        d.xi = parse_int(j.at("xi"), "xi");
        for (auto& p : j.at("S")) d.S.insert(parse_long(p, "S"));
        out.desc = std::move(d);
    } else if (kind == "ca") {
        CADesc d;
        d.p = parse_long(j.at("p"), "p");
        for (auto& [k, v] : j.at("rule").items()) d.laurent[std::stol(k)] = parse_long(v, "rule");
        out.desc = std::move(d);
    } else if (kind == "elliptic") {
        EllipticDesc d;
        d.p = parse_long(j.at("p"), "p");
        d.m = parse_long(j.at("m"), "m");
        d.ordinary = j.at("ordinary").get<bool>();
        out.desc = std::move(d);
    } else if (kind == "reductive") {
        SteinbergDesc d;
        d.p = parse_long(j.at("p"), "p");
        d.c = parse_int(j.at("c"), "c");
        d.J = parse_matrix(j.at("J"), "J");
        d.Z = j.contains("Z") ? parse_matrix(j.at("Z"), "Z") : IntMatrix(0, 0);
        out.desc = std::move(d);
    } else if (kind == "finite") {
        FiniteDesc d;
        for (auto& [k, v] : j.at("cycles").items()) d.cycles[std::stol(k)] = parse_long(v, "cycles");
        out.desc = std::move(d);
    } else if (kind == "raw_fad") {
        RawFadDesc d;
        d.A = parse_matrix(j.at("A"), "A");
        d.c = parse_rat(j.at("c"), "c");
        if (j.contains("S"))
            for (auto& p : j.at("S")) d.S.insert(parse_long(p, "S"));
        auto [rper, rvals] = parse_gcdseq(j.at("r"), "r");
        d.r_period = rper;
        d.r = rvals;
        if (j.contains("s"))
            for (auto& [k, v] : j.at("s").items()) {
                auto [per, vals] = parse_gcdseq(v, "s");
                d.s_period[std::stol(k)] = per;
                d.s[std::stol(k)] = vals;
            }
        if (j.contains("t"))
            for (auto& [k, v] : j.at("t").items()) {
                auto [per, vals] = parse_gcdseq(v, "t");
                d.t_period[std::stol(k)] = per;
                d.t[std::stol(k)] = vals;
            }
        out.desc = std::move(d);
    } else if (kind == "product") {
        auto pd = std::make_shared<ProductDesc>();
        for (auto& f : j.at("factors")) {
            ParsedInput sub = parse_descriptor_text(f.dump());
            if (sub.is_pair) throw argument_error("descriptor: torus_pair cannot be a product factor");
            pd->factors.push_back(sub.desc);
        }
        out.desc = pd;
    } else if (kind == "torus_pair") {
        out.is_pair = true;
        out.pair.p = parse_long(j.at("p"), "p");
        out.pair.m1 = parse_matrix(j.at("m1"), "m1");
        out.pair.m2 = parse_matrix(j.at("m2"), "m2");
    } else {
        throw argument_error("descriptor: unknown kind \"" + kind + "\"");
    }
    return out;
}

std::string serialize_descriptor(const SystemDescriptor& desc) {
    json j;
    if (std::holds_alternative<TorusDesc>(desc)) {
        const auto& d = std::get<TorusDesc>(desc);
        j = json{{"kind", "torus"}, {"p", std::to_string(d.p)}, {"matrix", matrix_to_json(d.M)}};
    } else if (std::holds_alternative<VectorGroupDesc>(desc)) {
        const auto& d = std::get<VectorGroupDesc>(desc);
        json mod = json::array();
        for (long c : d.modulus) mod.push_back(std::to_string(c));
        json sig = json::array();
        for (auto& row : d.sigma) {
            json r = json::array();
            for (auto& entry : row) {
                json e = json::array();
                for (auto& coords : entry) {
                    json cc = json::array();
                    for (long c : coords) cc.push_back(std::to_string(c));
                    e.push_back(cc);
                }
                r.push_back(e);
            }
            sig.push_back(r);
        }
        j = json{{"kind", "vector_group"},
                 {"p", std::to_string(d.p)},
                 {"nu", std::to_string(d.nu)},
                 {"modulus", mod},
                 {"sigma", sig}};
    } else if (std::holds_alternative<SIntegerDesc>(desc)) {
        const auto& d = std::get<SIntegerDesc>(desc);
        json S = json::array();
        for (long p : d.S) S.push_back(std::to_string(p));
        j = json{{"kind", "s_integer"}, {"xi", d.xi.get_str()}, {"S", S}};
    } else if (std::holds_alternative<CADesc>(desc)) {
        const auto& d = std::get<CADesc>(desc);
        json rule = json::object();
        for (auto& [e, v] : d.laurent) rule[std::to_string(e)] = std::to_string(v);
        j = json{{"kind", "ca"}, {"p", std::to_string(d.p)}, {"rule", rule}};
    } else if (std::holds_alternative<EllipticDesc>(desc)) {
        const auto& d = std::get<EllipticDesc>(desc);
        j = json{{"kind", "elliptic"},
                 {"p", std::to_string(d.p)},
                 {"m", std::to_string(d.m)},
                 {"ordinary", d.ordinary}};
    } else if (std::holds_alternative<SteinbergDesc>(desc)) {
        const auto& d = std::get<SteinbergDesc>(desc);
        j = json{{"kind", "reductive"},
                 {"p", std::to_string(d.p)},
                 {"c", d.c.get_str()},
                 {"J", matrix_to_json(d.J)},
                 {"Z", matrix_to_json(d.Z)}};
    } else if (std::holds_alternative<FiniteDesc>(desc)) {
        const auto& d = std::get<FiniteDesc>(desc);
        json cyc = json::object();
        for (auto& [len, cnt] : d.cycles) cyc[std::to_string(len)] = std::to_string(cnt);
        j = json{{"kind", "finite"}, {"cycles", cyc}};
    } else if (std::holds_alternative<RawFadDesc>(desc)) {
        const auto& d = std::get<RawFadDesc>(desc);
        json S = json::array();
        for (long p : d.S) S.push_back(std::to_string(p));
        json rr = json::object();
        for (auto& [dd, v] : d.r) rr[std::to_string(dd)] = to_string(v);
        json s = json::object(), t = json::object();
        for (auto& [p, vals] : d.s) {
            json vv = json::object();
            for (auto& [dd, v] : vals) vv[std::to_string(dd)] = to_string(v);
            s[std::to_string(p)] = json{{"period", std::to_string(d.s_period.at(p))}, {"values", vv}};
        }
        for (auto& [p, vals] : d.t) {
            json vv = json::object();
            for (auto& [dd, v] : vals) vv[std::to_string(dd)] = to_string(v);
            t[std::to_string(p)] = json{{"period", std::to_string(d.t_period.at(p))}, {"values", vv}};
        }
        j = json{{"kind", "raw_fad"},
                 {"A", matrix_to_json(d.A)},
                 {"c", to_string(d.c)},
                 {"S", S},
                 {"r", json{{"period", std::to_string(d.r_period)}, {"values", rr}}},
                 {"s", s},
                 {"t", t}};
    } else {
        const auto& pd = std::get<std::shared_ptr<ProductDesc>>(desc);
        json factors = json::array();
        for (auto& f : pd->factors) factors.push_back(json::parse(serialize_descriptor(f)));
        j = json{{"kind", "product"}, {"factors", factors}};
    }
    return j.dump();
}

std::string params_to_json(const FadParams& fp) {
    json j;
    j["A"] = matrix_to_json(fp.handle.A);
    j["c"] = to_string(fp.c);
    json S = json::array();
    for (long p : fp.S) S.push_back(std::to_string(p));
    j["S"] = S;
    j["r"] = gcdseq_to_json(fp.r);
    json s = json::object(), t = json::object();
    for (auto& [p, q] : fp.s) s[std::to_string(p)] = gcdseq_to_json(q);
    for (auto& [p, q] : fp.t) t[std::to_string(p)] = gcdseq_to_json(q);
    j["s"] = s;
    j["t"] = t;
    return j.dump();
}

std::string detector_to_json(const DetectorDescriptor& d) {
    json S = json::array();
    for (long p : d.S) S.push_back(std::to_string(p));
    json j{{"varpi", std::to_string(d.varpi)},
           {"delta", std::to_string(d.delta)},
           {"t", std::to_string(d.t)},
           {"t_flag", d.t_flag == RankFlag::Exact ? "exact" : "upper_bound"},
           {"s", d.s.get_str()},
           {"s0", d.s0.get_str()},
           {"S", S}};
    return j.dump();
}

} // namespace fad
