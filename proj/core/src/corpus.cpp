#include "mwtl/corpus.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

#include "mwtl/rng.hpp"

namespace mwtl {

std::string CorpusSpec::to_json() const {
    nlohmann::json j{{"size", size},
                     {"seed", seed},
                     {"band", {band_lo, band_hi}}};
    return j.dump();
}

CorpusSpec CorpusSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CorpusSpec s;
    if (j.contains("size")) s.size = j["size"].get<int>();
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("band")) {
        s.band_lo = j["band"][0].get<double>();
        s.band_hi = j["band"][1].get<double>();
    }
    return s;
}

SampledField corpus_member(const TorusGrid& grid, int m, const CorpusSpec& spec, int member) {
    if (spec.band_lo <= 0 || spec.band_hi < spec.band_lo)
        throw std::invalid_argument("corpus: band must satisfy 0 < lo <= hi");
    if (spec.band_hi >= grid.samples_per_axis() / 2.0)
        throw std::invalid_argument("corpus: band exceeds Nyquist limit");

    Rng rng(spec.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(member + 1));
    SampledField spec_field(grid, m);
    for (std::size_t s = 0; s < grid.total_samples(); ++s) {
        auto k = grid.freq_coords(s);
        double kmag = std::sqrt(static_cast<double>(k[0]) * k[0] +
                                static_cast<double>(k[1]) * k[1]);
        bool in_band = kmag >= spec.band_lo && kmag <= spec.band_hi;
        for (int c = 0; c < m; ++c) {
            cplx z = rng.cnormal();  // always drawn, keeps streams band-independent
            spec_field.at(s, c) = in_band ? z : cplx{0, 0};
        }
    }
    SampledField f = fft_inverse(spec_field);
    f.set_band_limit(static_cast<int>(std::ceil(spec.band_hi)));
    return f;
}

std::vector<SampledField> make_corpus(const TorusGrid& grid, int m, const CorpusSpec& spec) {
    std::vector<SampledField> out;
    out.reserve(spec.size);
    for (int i = 0; i < spec.size; ++i) out.push_back(corpus_member(grid, m, spec, i));
    return out;
}

}  // namespace mwtl
