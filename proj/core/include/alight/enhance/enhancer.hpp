#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "alight/core/errors.hpp"
#include "alight/core/frame.hpp"

namespace alight::enhance {

class EnhancementError : public Error {
public:
    using Error::Error;
};

/// Low-light enhancement stage. Implementations preserve frame dimensions,
/// return 8-bit output and pass the depth channel through untouched.
class EnhancerPort {
public:
    virtual ~EnhancerPort() = default;
    virtual Frame enhance(const Frame& frame) = 0;
    virtual std::string name() const = 0;
};

struct ClassicalEnhancerConfig {
    double gamma = 0.4;
    /// Histogram percentiles mapped to 0 and 1 before the gamma curve.
    double clip_low = 1.0;
    double clip_high = 99.0;

    void validate() const;
};

/// Percentile contrast stretch followed by a gamma curve.
Frame classical_enhance(const Frame& frame, const ClassicalEnhancerConfig& config);

/// Value at the given percentile (nearest rank) of an 8-bit image.
int percentile_value(const GrayImage& image, double percentile);

class ClassicalEnhancer final : public EnhancerPort {
public:
    explicit ClassicalEnhancer(ClassicalEnhancerConfig config = {});
    Frame enhance(const Frame& frame) override;
    std::string name() const override { return "classical"; }
    const ClassicalEnhancerConfig& config() const { return config_; }

private:
    ClassicalEnhancerConfig config_;
};

/// External enhancer process: PGM on stdin, same-size PGM on stdout, exit 0.
struct ExternalCommand {
    std::vector<std::string> argv;
    std::chrono::milliseconds timeout{5000};
};

/// Runs the command once. Throws EnhancementError on spawn failure, timeout,
/// non-zero exit, malformed output or size mismatch.
Frame external_enhance(const Frame& frame, const ExternalCommand& command);

class ExternalEnhancer final : public EnhancerPort {
public:
    explicit ExternalEnhancer(ExternalCommand command);
    /// Serialised: one process interaction at a time.
    Frame enhance(const Frame& frame) override;
    std::string name() const override;

private:
    ExternalCommand command_;
    std::mutex mutex_;
};

/// Tries `primary`; on EnhancementError logs and answers with `fallback`.
class FallbackEnhancer final : public EnhancerPort {
public:
    using Logger = std::function<void(const std::string&)>;

    FallbackEnhancer(std::unique_ptr<EnhancerPort> primary, std::unique_ptr<EnhancerPort> fallback,
                     Logger log = {});
    Frame enhance(const Frame& frame) override;
    std::string name() const override;

    std::size_t substitutions() const { return substitutions_.load(); }

private:
    std::unique_ptr<EnhancerPort> primary_;
    std::unique_ptr<EnhancerPort> fallback_;
    Logger log_;
    std::atomic<std::size_t> substitutions_{0};
};

}  // namespace alight::enhance
