#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace riskdp {

/// Discrete probability measure on the real line.
///
/// Atoms are strictly increasing (duplicates are merged at construction by
/// summing their probabilities) and probabilities are renormalized so the
/// total mass is 1 up to 1e-12. Instances are immutable and safe to share
/// across threads.
class FiniteDistribution {
public:
    const std::vector<double>& atoms() const { return atoms_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return atoms_.size(); }

    double min_atom() const { return atoms_.front(); }
    double max_atom() const { return atoms_.back(); }

    /// F(z) = P(Z <= z); right-continuous step function.
    double cdf(double z) const;

    /// F(z-) = P(Z < z).
    double cdf_left(double z) const;

    /// Cumulative probabilities aligned with atoms().
    const std::vector<double>& cumulative() const { return cum_; }

    static FiniteDistribution dirac(double value);

private:
    FiniteDistribution() = default;
    friend FiniteDistribution make_distribution(std::vector<double> values,
                                                std::vector<double> probs);

    std::vector<double> atoms_;
    std::vector<double> probs_;
    std::vector<double> cum_;
};

/// Builds a distribution from (values, probs). Values are sorted, duplicates
/// merged, probabilities renormalized. Input mass may deviate from 1 by at
/// most 1e-9.
FiniteDistribution make_distribution(std::vector<double> values,
                                     std::vector<double> probs);

/// An i.i.d. sample with the seed that produced it, kept for provenance.
struct SampleBatch {
    std::vector<double> values;
    std::uint64_t seed = 0;
};

void validate(const SampleBatch& batch);

/// Empirical measure N^{-1} sum_i delta_{Z_i}.
FiniteDistribution empirical(const SampleBatch& samples);

/// Law of image[i] when atom i is drawn; image must have one entry per atom.
FiniteDistribution pushforward(const FiniteDistribution& dist,
                               const std::vector<double>& image);

} // namespace riskdp
