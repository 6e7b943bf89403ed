#pragma once

// JSON input formats for presentations, planar diagrams, and endomorphisms,
// plus JSON/CSV output for torsion representatives and sampled functions.
// Doubles are serialized with shortest round-trip formatting.

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <l2alex/pipeline.hpp>

namespace l2alex {

using nlohmann::json;

inline std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

// {"generators": ["x","y"], "relators": ["x^3 y^-7"], "phi": [[7],[3]]}
inline Presentation presentation_from_json(const json& j) {
    Presentation P;
    try {
        for (auto& g : j.at("generators")) P.generators.push_back(g.get<std::string>());
        auto names = P.name_table();
        for (auto& r : j.at("relators")) P.relators.push_back(parse_word(r.get<std::string>(), names));
        const json& phi = j.at("phi");
        if (!phi.is_array() || phi.size() != P.generators.size())
            throw ParseError("phi must list one image per generator");
        P.phi.rank = -1;
        for (auto& img : phi) {
            std::vector<std::int64_t> v;
            for (auto& x : img) v.push_back(x.get<std::int64_t>());
            if (P.phi.rank < 0) P.phi.rank = (int)v.size();
            if ((int)v.size() != P.phi.rank) throw ParseError("phi images have mixed arity");
            P.phi.images.push_back(std::move(v));
        }
        if (P.phi.rank <= 0) throw ParseError("phi must have positive rank");
    } catch (const json::exception& e) {
        throw ParseError(std::string("presentation: ") + e.what());
    }
    P.validate();
    return P;
}

inline json presentation_to_json(const Presentation& P) {
    json j;
    j["generators"] = P.generators;
    auto& rel = j["relators"] = json::array();
    for (auto& r : P.relators) rel.push_back(format_word(r, P.generators));
    auto& phi = j["phi"] = json::array();
    for (auto& img : P.phi.images) phi.push_back(img);
    return j;
}

// {"pd": [[1,4,2,5],[3,6,4,1],[5,2,6,3]]} or the bare crossing list
inline PDCode pd_from_json(const json& j) {
    PDCode D;
    try {
        const json& arr = j.is_array() ? j : j.at("pd");
        for (auto& x : arr) {
            if (!x.is_array() || x.size() != 4) throw ParseError("each crossing needs 4 labels");
            D.crossings.push_back({x[0].get<std::int64_t>(), x[1].get<std::int64_t>(),
                                   x[2].get<std::int64_t>(), x[3].get<std::int64_t>()});
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("pd code: ") + e.what());
    }
    return D;
}

// {"generators": ["x","y"], "images": ["x y", "y x y"]}
inline FreeGroupEndo endo_from_json(const json& j) {
    FreeGroupEndo f;
    try {
        for (auto& g : j.at("generators")) f.generators.push_back(g.get<std::string>());
        std::map<std::string, int> names;
        for (int i = 0; i < (int)f.generators.size(); ++i) names[f.generators[i]] = i;
        for (auto& w : j.at("images")) f.images.push_back(parse_word(w.get<std::string>(), names));
    } catch (const json::exception& e) {
        throw ParseError(std::string("endomorphism: ") + e.what());
    }
    f.validate();
    return f;
}

// Display form like "3 * t^-1 * max(1,t)^11"; exponents print as integers
// when they are integers.
inline std::string mm_format(const MaxMonomialFn& f) {
    if (f.zero) return "0";
    auto num = [](double v) {
        if (v == (double)(std::int64_t)v) return std::to_string((std::int64_t)v);
        return fmt_double(v);
    };
    std::string out;
    auto append = [&](const std::string& piece) {
        if (!out.empty()) out += " * ";
        out += piece;
    };
    if (f.C != 1.0) append(fmt_double(f.C));
    if (f.r != 0.0) append("t^" + num(f.r));
    for (auto& fa : f.factors) {
        std::string base = (fa.c == 1.0) ? "max(1,t)" : "max(" + fmt_double(fa.c) + ",t)";
        append(base + "^" + num(fa.e));
    }
    return out.empty() ? "1" : out;
}

inline json mm_to_json(const MaxMonomialFn& f) {
    json j;
    j["zero"] = f.zero;
    if (f.zero) return j;
    j["C"] = f.C;
    j["r"] = f.r;
    if (f.C_exact) j["C_exact"] = format_rat(*f.C_exact);
    if (f.prod_exact) j["prod_exact"] = format_rat(*f.prod_exact);
    auto& fac = j["factors"] = json::array();
    for (auto& fa : f.factors) {
        json e;
        e["c"] = fa.c;
        e["e"] = fa.e;
        if (fa.c_exact) e["c_exact"] = format_rat(*fa.c_exact);
        fac.push_back(e);
    }
    return j;
}

inline MaxMonomialFn mm_from_json(const json& j) {
    MaxMonomialFn f;
    try {
        f.zero = j.at("zero").get<bool>();
        if (f.zero) return mm_zero();
        f.C = j.at("C").get<double>();
        f.r = j.at("r").get<double>();
        if (j.contains("C_exact")) f.C_exact = parse_rat(j["C_exact"].get<std::string>());
        if (j.contains("prod_exact")) f.prod_exact = parse_rat(j["prod_exact"].get<std::string>());
        for (auto& e : j.at("factors")) {
            MMFactor fa;
            fa.c = e.at("c").get<double>();
            fa.e = e.at("e").get<double>();
            if (e.contains("c_exact")) fa.c_exact = parse_rat(e["c_exact"].get<std::string>());
            f.factors.push_back(fa);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("torsion function: ") + e.what());
    }
    return f;
}

inline void sampled_to_csv(std::ostream& os, const SampledFn& s) {
    os << "t,value,err\n";
    for (auto& row : s.rows)
        os << fmt_double(row.t) << ',' << fmt_double(row.value) << ',' << fmt_double(row.err)
           << '\n';
}

inline json sampled_to_json(const SampledFn& s) {
    json j = json::array();
    for (auto& row : s.rows) j.push_back({{"t", row.t}, {"value", row.value}, {"err", row.err}});
    return j;
}

inline json degree_to_json(const DegreeReport& d) {
    json j;
    j["deg0"] = d.deg0;
    j["deg_inf"] = d.deg_inf;
    j["deg"] = d.deg;
    j["exact"] = d.exact;
    j["is_zero_fn"] = d.is_zero_fn;
    if (d.stderr0 >= 0) j["stderr0"] = d.stderr0;
    if (d.stderr_inf >= 0) j["stderr_inf"] = d.stderr_inf;
    return j;
}

} // namespace l2alex
