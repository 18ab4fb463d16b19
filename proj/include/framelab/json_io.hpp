#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framelab/certificates.hpp"
#include "framelab/mat.hpp"
#include "framelab/rmatroid.hpp"
#include "framelab/subspace.hpp"
#include "framelab/template_reduce.hpp"
#include "framelab/templates.hpp"

namespace framelab {

using json = nlohmann::json;

inline json mat_to_json(const Mat& m) {
    json j;
    j["p"] = m.field().p();
    j["rows"] = m.row_labels();
    j["cols"] = m.col_labels();
    json rows = json::array();
    for (size_t i = 0; i < m.nrows(); ++i) {
        json r = json::array();
        for (size_t jj = 0; jj < m.ncols(); ++jj) r.push_back(m.at(i, jj));
        rows.push_back(std::move(r));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline Mat mat_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("rows") || !j.contains("cols") ||
        !j.contains("entries"))
        throw std::invalid_argument("matrix JSON needs p, rows, cols, entries");
    PrimeField f(j.at("p").get<int>());
    std::vector<Label> rows = j.at("rows").get<std::vector<Label>>();
    std::vector<Label> cols = j.at("cols").get<std::vector<Label>>();
    const json& e = j.at("entries");
    if (!e.is_array() || e.size() != rows.size())
        throw std::invalid_argument("matrix JSON entries must have one list per row");
    Mat m(f, rows, cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!e[i].is_array() || e[i].size() != cols.size())
            throw std::invalid_argument("matrix JSON row length mismatch");
        for (size_t jj = 0; jj < cols.size(); ++jj) {
            long long v = e[i][jj].get<long long>();
            long long r = v % f.p();
            if (r < 0) r += f.p();
            m.set(i, jj, static_cast<int>(r));
        }
    }
    return m;
}

inline json matroid_to_json(const RepresentedMatroid& m) {
    json j = mat_to_json(m.rep());
    j["kind"] = "represented-matroid";
    return j;
}

inline RepresentedMatroid matroid_from_json(const json& j) {
    if (j.contains("kind") && j.at("kind") != "represented-matroid")
        throw std::invalid_argument("matroid JSON has an unexpected kind");
    return RepresentedMatroid(mat_from_json(j));
}

inline json template_to_json(const FrameTemplate& phi) {
    json j;
    j["p"] = phi.field().p();
    j["gamma"] = phi.gamma().elements();
    j["C"] = phi.c();
    j["X"] = phi.x();
    j["Y0"] = phi.y0();
    j["Y1"] = phi.y1();
    j["A1"] = mat_to_json(phi.a1());
    j["delta_basis"] = mat_to_json(phi.delta().basis());
    j["lambda_basis"] = mat_to_json(phi.lambda().basis());
    return j;
}

inline FrameTemplate template_from_json(const json& j) {
    for (const char* key : {"p", "gamma", "C", "X", "Y0", "Y1", "A1", "delta_basis", "lambda_basis"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("template JSON needs field ") + key);
    PrimeField f(j.at("p").get<int>());
    SubgroupGamma gamma(f, j.at("gamma").get<std::vector<int>>());
    Mat a1 = mat_from_json(j.at("A1"));
    Mat db = mat_from_json(j.at("delta_basis"));
    Mat lb = mat_from_json(j.at("lambda_basis"));
    if (a1.field() != f || db.field() != f || lb.field() != f)
        throw std::invalid_argument("template JSON mixes fields");
    return FrameTemplate(gamma, j.at("C").get<std::vector<Label>>(),
                         j.at("X").get<std::vector<Label>>(),
                         j.at("Y0").get<std::vector<Label>>(),
                         j.at("Y1").get<std::vector<Label>>(), a1, Subspace::from_rows(db),
                         Subspace::from_rows(lb));
}

inline json certificate_to_json(const MinorCertificate& cert) {
    json j;
    j["contracted"] = cert.contracted;
    j["deleted"] = cert.deleted;
    json map = json::object();
    for (const auto& [pl, hl] : cert.map) map[pl] = hl;
    j["map"] = std::move(map);
    json sc = json::object();
    for (const auto& [l, s] : cert.scalings) sc[l] = s;
    j["scalings"] = std::move(sc);
    j["mode"] = cert.mode == IsoMode::Represented ? "represented" : "abstract";
    return j;
}

inline MinorCertificate certificate_from_json(const json& j) {
    MinorCertificate cert;
    cert.contracted = j.at("contracted").get<std::vector<Label>>();
    cert.deleted = j.at("deleted").get<std::vector<Label>>();
    for (const auto& [pl, hl] : j.at("map").items()) cert.map[pl] = hl.get<Label>();
    if (j.contains("scalings"))
        for (const auto& [l, s] : j.at("scalings").items()) cert.scalings[l] = s.get<int>();
    std::string mode = j.value("mode", "represented");
    if (mode != "represented" && mode != "abstract")
        throw std::invalid_argument("certificate JSON has an unknown mode");
    cert.mode = mode == "represented" ? IsoMode::Represented : IsoMode::Abstract;
    return cert;
}

inline json trace_to_json(const ReductionTrace& trace) {
    json j = json::array();
    for (const ReductionPass& pass : trace) {
        json p;
        p["name"] = pass.name;
        p["evidence"] = pass.evidence;
        p["before"] = template_to_json(pass.before);
        p["after"] = template_to_json(pass.after);
        j.push_back(std::move(p));
    }
    return j;
}

}  // namespace framelab
