#include "alight/focus/tsm.hpp"

#include <algorithm>
#include <cmath>

namespace alight::focus {

void TsmParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInputError("TSM alpha must lie in [0, 1]");
    if (!(epsilon > 0.0)) throw InvalidInputError("TSM epsilon must be positive");
}

std::vector<double> normalize(std::span<const double> values, NormalizationMode mode) {
    if (values.empty()) throw InvalidInputError("cannot normalise an empty list");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    std::vector<double> out(values.size(), 0.0);
    if (hi == lo) return out;
    const double anchor = mode == NormalizationMode::Standard ? lo : hi;
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - anchor) / (hi - lo);
    return out;
}

double tsm_score(double n_prime, double d_prime, const TsmParams& params) {
    const double denom = d_prime + params.epsilon;
    if (denom == 0.0) throw UndefinedScoreError("target selection score undefined: d' + epsilon == 0");
    return params.alpha / denom + (1.0 - params.alpha) * n_prime;
}

Selection select_target(std::span<const Centroid> centroids, FocusState& state, const TsmParams& params) {
    params.validate();
    if (centroids.empty()) throw NoTargetError("no centroid to select");

    std::vector<double> distances(centroids.size(), 0.0);
    std::vector<double> counts(centroids.size(), 0.0);
    for (std::size_t i = 0; i < centroids.size(); ++i) {
        counts[i] = static_cast<double>(centroids[i].count);
        if (state.p_last) {
            distances[i] = std::hypot(state.p_last->x - centroids[i].position.x,
                                      state.p_last->y - centroids[i].position.y);
        }
    }
    const std::vector<double> n_prime = normalize(counts, params.mode);
    const std::vector<double> d_prime = normalize(distances, params.mode);

    Selection sel;
    sel.scores.resize(centroids.size());
    for (std::size_t i = 0; i < centroids.size(); ++i) sel.scores[i] = tsm_score(n_prime[i], d_prime[i], params);

    std::size_t best = 0;
    for (std::size_t i = 1; i < centroids.size(); ++i) {
        const double si = sel.scores[i], sb = sel.scores[best];
        if (si > sb) {
            best = i;
        } else if (si == sb) {
            if (centroids[i].count > centroids[best].count ||
                (centroids[i].count == centroids[best].count &&
                 row_major_less(centroids[i].position, centroids[best].position)))
                best = i;
        }
    }
    sel.index = best;
    sel.score = sel.scores[best];
    sel.target = centroids[best].position;
    state.p_last = sel.target;
    return sel;
}

}  // namespace alight::focus
