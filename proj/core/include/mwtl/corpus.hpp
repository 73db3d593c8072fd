#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwtl/grid.hpp"

namespace mwtl {

/// Seeded generator description for band-limited zero-mean test fields.
struct CorpusSpec {
    int size = 20;
    std::uint64_t seed = 0xc0de;
    double band_lo = 4.0;  // frequency annulus band_lo <= |k| <= band_hi
    double band_hi = 8.0;

    std::string to_json() const;
    static CorpusSpec from_json(const std::string& text);
};

/// One field per member: iid complex Gaussian spectrum on the annulus,
/// zero elsewhere. Member i uses a seed derived from spec.seed and i only,
/// so corpora of different sizes share their common prefix.
std::vector<SampledField> make_corpus(const TorusGrid& grid, int m, const CorpusSpec& spec);

SampledField corpus_member(const TorusGrid& grid, int m, const CorpusSpec& spec, int member);

}  // namespace mwtl
