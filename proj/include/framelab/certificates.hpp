#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "isomorphism.hpp"
#include "projective.hpp"
#include "rmatroid.hpp"

namespace framelab {

// Replayable evidence that `pattern` is a minor of `host`: contract the listed
// elements, delete the rest, and identify what remains with the pattern's
// ground set via `map` (pattern label -> host label). Represented-mode
// certificates also carry column scalings that turn the relabeled minor into
// the pattern's row space exactly; abstract-mode certificates only claim a
// rank-preserving bijection.
struct MinorCertificate {
    std::vector<Label> contracted;
    std::vector<Label> deleted;
    std::map<Label, Label> map;
    ColScaling scalings;
    IsoMode mode = IsoMode::Represented;
};

inline RepresentedMatroid apply_certificate(const RepresentedMatroid& host,
                                            const MinorCertificate& cert) {
    return delete_elements(contract_elements(host, cert.contracted), cert.deleted);
}

inline bool replay_minor(const RepresentedMatroid& host, const RepresentedMatroid& pattern,
                         const MinorCertificate& cert) {
    if (host.field() != pattern.field()) return false;
    std::set<Label> touched;
    for (const auto& e : cert.contracted) {
        if (!host.has_element(e) || !touched.insert(e).second) return false;
    }
    for (const auto& e : cert.deleted) {
        if (!host.has_element(e) || !touched.insert(e).second) return false;
    }
    if (cert.map.size() != pattern.size()) return false;
    std::set<Label> image;
    for (const auto& [pl, hl] : cert.map) {
        if (!pattern.has_element(pl)) return false;
        if (touched.count(hl) || !host.has_element(hl)) return false;
        if (!image.insert(hl).second) return false;
    }
    if (touched.size() + image.size() != host.size()) return false;

    RepresentedMatroid minor = apply_certificate(host, cert);
    if (minor.size() != pattern.size()) return false;
    for (const auto& hl : image) {
        if (!minor.has_element(hl)) return false;
    }

    if (cert.mode == IsoMode::Abstract) {
        return is_rank_preserving_bijection(pattern, minor, cert.map);
    }

    std::map<Label, Label> inverse_map;
    for (const auto& [pl, hl] : cert.map) inverse_map[hl] = pl;
    Mat relabeled = minor.rep();
    std::vector<Label> new_cols;
    new_cols.reserve(relabeled.ncols());
    for (const auto& c : relabeled.col_labels()) new_cols.push_back(inverse_map.at(c));
    relabeled.relabel_cols(new_cols);
    RepresentedMatroid renamed(relabeled);

    if (!cert.scalings.empty()) {
        if (cert.scalings.size() != renamed.size()) return false;
        Mat scaled = renamed.rep();
        const auto& f = scaled.field();
        for (const auto& [lbl, s] : cert.scalings) {
            if (!scaled.has_col(lbl) || f.normalize(s) == 0) return false;
            scaled.scale_col(scaled.col_index(lbl), s);
        }
        return RepresentedMatroid(scaled).rep() == pattern.rep();
    }
    return projectively_equivalent(pattern.rep(), renamed.rep()).has_value();
}

}  // namespace framelab
