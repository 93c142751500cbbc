#pragma once

#include <json.hpp>

#include "qcrypt/games.hpp"
#include "qcrypt/locking.hpp"
#include "qcrypt/mub.hpp"
#include "qcrypt/sdp.hpp"
#include "qcrypt/uncertainty.hpp"

namespace qcrypt {

using json = nlohmann::json;

// Shared matrix wire format: {"dim": n, "re": [...], "im": [...]} row-major.
inline json matrix_to_json(const Mat& m) {
    if (!m.square()) throw ValidationError("matrix_to_json: square matrices only");
    json j;
    j["dim"] = m.rows();
    std::vector<double> re, im;
    re.reserve(m.data().size());
    im.reserve(m.data().size());
    for (const cplx& x : m.data()) {
        re.push_back(x.real());
        im.push_back(x.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

inline Mat matrix_from_json(const json& j) {
    const int d = j.at("dim").get<int>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (static_cast<int>(re.size()) != d * d || im.size() != re.size())
        throw ValidationError("matrix_from_json: entry count != dim^2");
    Mat m(d, d);
    for (int i = 0; i < d * d; ++i) m.data()[i] = cplx(re[i], im[i]);
    return m;
}

inline json vector_to_json(const Vec& v) {
    std::vector<double> re, im;
    for (const cplx& x : v) {
        re.push_back(x.real());
        im.push_back(x.imag());
    }
    return json{{"re", re}, {"im", im}};
}

inline json mubset_to_json(const MubSet& m) {
    json bases = json::array();
    for (const auto& b : m.bases()) {
        json vectors = json::array();
        for (const auto& v : b.vectors()) vectors.push_back(vector_to_json(v));
        bases.push_back(vectors);
    }
    return json{{"dim", m.dim()}, {"bases", bases}};
}

inline json sdp_problem_to_json(const sdp::Problem& p) {
    json constraints = json::array();
    for (size_t i = 0; i < p.A.size(); ++i)
        constraints.push_back(json{{"A", matrix_to_json(p.A[i])}, {"b", p.b[i]}});
    return json{{"C", matrix_to_json(p.C)}, {"constraints", constraints}};
}

inline sdp::Problem sdp_problem_from_json(const json& j) {
    sdp::Problem p;
    p.C = matrix_from_json(j.at("C"));
    for (const auto& c : j.at("constraints")) {
        p.A.push_back(matrix_from_json(c.at("A")));
        p.b.push_back(c.at("b").get<double>());
    }
    p.validate();
    return p;
}

// {"nS":.., "nT":.., "pi": [[..]], "V": {"c0": [[0/1]], "c1": [[0/1]]}}
inline json game_to_json(const XorGame& g) {
    json pi = json::array(), c0 = json::array(), c1 = json::array();
    for (int s = 0; s < g.ns(); ++s) {
        json pr = json::array(), r0 = json::array(), r1 = json::array();
        for (int t = 0; t < g.nt(); ++t) {
            pr.push_back(g.pi(s, t));
            r0.push_back(g.v(0, s, t));
            r1.push_back(g.v(1, s, t));
        }
        pi.push_back(pr);
        c0.push_back(r0);
        c1.push_back(r1);
    }
    return json{{"nS", g.ns()}, {"nT", g.nt()}, {"pi", pi}, {"V", json{{"c0", c0}, {"c1", c1}}}};
}

inline XorGame game_from_json(const json& j) {
    const int ns = j.at("nS").get<int>();
    const int nt = j.at("nT").get<int>();
    auto pi = j.at("pi").get<std::vector<std::vector<double>>>();
    auto c0 = j.at("V").at("c0").get<std::vector<std::vector<int>>>();
    auto c1 = j.at("V").at("c1").get<std::vector<std::vector<int>>>();
    return XorGame(ns, nt, std::move(pi), std::move(c0), std::move(c1));
}

// Function tables arrive as {"n": ..., "table": [y0, y1, ...]}.
inline std::vector<int> function_table_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    auto table = j.at("table").get<std::vector<int>>();
    if (n < 1 || static_cast<int>(table.size()) != (1 << n))
        throw ValidationError("function_table_from_json: table length != 2^n");
    return table;
}

// {relation, d, m_or_K, bound, achieved, minimizer}
inline json uncertainty_to_json(const UncertaintyResult& r, int d, int m_or_k) {
    return json{{"relation", r.relation}, {"d", d},
                {"m_or_K", m_or_k},       {"bound", r.bound},
                {"achieved", r.achieved}, {"minimizer", vector_to_json(r.minimizer)}};
}

// {family, n, m, upper, lower, tight}; d carries the dimension for
// families that do not live on qubits.
inline json locking_to_json(const LockingResult& r) {
    return json{{"family", r.family}, {"d", r.dim},
                {"n", static_cast<int>(std::lround(std::log2(r.dim)))},
                {"m", r.n_bases},     {"upper", r.upper},
                {"lower", r.lower},   {"tight", r.tight}};
}

} // namespace qcrypt
