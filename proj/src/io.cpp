#include "convpow/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace convpow {

namespace {

using nlohmann::json;

LatticeFunction from_json_text(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_object() || !j.contains("offset") || !j.contains("coeffs"))
        throw std::runtime_error("lattice function JSON needs offset and coeffs");
    const std::int64_t offset = j.at("offset").get<std::int64_t>();
    std::vector<cplx> coeffs;
    for (const auto& pair : j.at("coeffs")) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::runtime_error("coeffs entries must be [re, im] pairs");
        coeffs.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    return LatticeFunction(offset, std::move(coeffs));
}

LatticeFunction from_triples_text(const std::string& text) {
    std::istringstream in(text);
    std::map<std::int64_t, cplx> values;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::int64_t x;
        double re, im;
        if (!(ls >> x)) {
            std::string rest;
            ls.clear();
            if (ls >> rest) throw std::runtime_error("bad line in lattice function file: " + line);
            continue;  // blank line
        }
        if (!(ls >> re >> im))
            throw std::runtime_error("bad line in lattice function file: " + line);
        std::string extra;
        if (ls >> extra) throw std::runtime_error("trailing tokens on line: " + line);
        if (values.count(x)) throw std::runtime_error("duplicate lattice point in file");
        values[x] = cplx(re, im);
    }
    if (values.empty()) throw std::runtime_error("empty lattice function file");
    const std::int64_t lo = values.begin()->first;
    const std::int64_t hi = values.rbegin()->first;
    std::vector<cplx> coeffs(static_cast<std::size_t>(hi - lo + 1), cplx(0.0, 0.0));
    for (const auto& [x, v] : values) coeffs[static_cast<std::size_t>(x - lo)] = v;
    return LatticeFunction(lo, std::move(coeffs));
}

}  // namespace

LatticeFunction parse_lattice_function(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '{') return from_json_text(text);
        return from_triples_text(text);
    }
    throw std::runtime_error("empty lattice function input");
}

LatticeFunction load_lattice_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_lattice_function(buf.str());
}

nlohmann::json to_json(const LatticeFunction& f) {
    json coeffs = json::array();
    for (const auto& z : f.coeffs()) coeffs.push_back({z.real(), z.imag()});
    return json{{"offset", f.offset()}, {"coeffs", coeffs}};
}

std::string kind_name(PointKind k) {
    switch (k) {
        case PointKind::EvenDecay: return "EvenDecay";
        case PointKind::OddDrift: return "OddDrift";
        case PointKind::Degenerate: return "Degenerate";
    }
    return "?";
}

std::string case_name(StabilityCase c) {
    switch (c) {
        case StabilityCase::TrivialShift: return "TrivialShift";
        case StabilityCase::Stable: return "Stable";
        case StabilityCase::Unstable: return "Unstable";
    }
    return "?";
}

nlohmann::json to_json(const MaxPoint& p) {
    json j{{"theta", p.theta},
           {"value", {p.value.real(), p.value.imag()}},
           {"alpha", p.alpha},
           {"mu", p.mu},
           {"nu", p.nu},
           {"gamma", {p.gamma.real(), p.gamma.imag()}},
           {"kind", kind_name(p.kind)}};
    return j;
}

nlohmann::json to_json(const SymbolAnalysis& a) {
    json pts = json::array();
    for (const auto& p : a.points) pts.push_back(to_json(p));
    return json{{"normalization", a.normalization}, {"points", pts}, {"strictness", a.strictness}};
}

nlohmann::json to_json(const StabilityVerdict& v) {
    json j{{"case", case_name(v.verdict)}};
    if (v.growth_exponent) j["growth_exponent"] = *v.growth_exponent;
    json ws = json::array();
    for (const auto& w : v.witnesses)
        ws.push_back(json{{"theta", w.theta}, {"kind", kind_name(w.kind)}, {"mu", w.mu}, {"nu", w.nu}});
    j["witnesses"] = ws;
    return j;
}

nlohmann::json to_json(const CarneBoundReport& r) {
    json C = json::object(), cv = json::object();
    for (const auto& [n, v] : r.C) C[std::to_string(n)] = v;
    for (const auto& [n, v] : r.classical) cv[std::to_string(n)] = v;
    json j{{"c", r.c}, {"C", C}};
    if (!r.classical.empty()) j["classical"] = cv;
    return j;
}

nlohmann::json to_json(const DiagLowerReport& r) {
    json ratios = json::object();
    for (const auto& [n, v] : r.ratios) ratios[std::to_string(n)] = v;
    return json{{"ratios", ratios},
                {"median", r.median},
                {"min_over_median", r.min_over_median},
                {"max_over_median", r.max_over_median}};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

}  // namespace convpow
