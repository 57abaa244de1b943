#pragma once

#include <optional>
#include <span>
#include <vector>

#include "alight/core/errors.hpp"
#include "alight/core/pixel.hpp"
#include "alight/focus/cluster.hpp"

namespace alight::focus {

/// Standard: (v - min)/(max - min) in [0, 1].
/// Literal: (v - max)/(max - min) in [-1, 0], the form printed with the metric.
enum class NormalizationMode { Standard, Literal };

struct TsmParams {
    double alpha = 0.5;
    double epsilon = 0.1;
    NormalizationMode mode = NormalizationMode::Standard;

    void validate() const;
};

class NoTargetError : public Error {
public:
    using Error::Error;
};

class UndefinedScoreError : public Error {
public:
    using Error::Error;
};

/// Min–max normalisation; a constant list maps to all zeros in both modes.
/// Throws InvalidInputError on an empty list.
std::vector<double> normalize(std::span<const double> values, NormalizationMode mode);

/// m = α/(d' + ε) + (1 − α)·n'. Throws UndefinedScoreError when d' + ε == 0.
double tsm_score(double n_prime, double d_prime, const TsmParams& params);

struct FocusState {
    std::optional<PixelPoint> p_last;
};

struct Selection {
    PixelPoint target;
    std::size_t index = 0;
    double score = 0.0;
    std::vector<double> scores;
};

/// Scores every centroid against the previous target and returns the best one;
/// ties go to the larger count, then row-major position. Updates state.p_last.
/// Throws NoTargetError on an empty list (state is left untouched).
Selection select_target(std::span<const Centroid> centroids, FocusState& state, const TsmParams& params);

}  // namespace alight::focus
