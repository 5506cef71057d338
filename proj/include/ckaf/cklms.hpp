#pragma once

#include "ckaf/kernels.hpp"
#include "ckaf/types.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace ckaf {

/// Novelty-criterion thresholds. A sample is admitted only when its
/// feature-space distance to every stored center is at least `delta1` and
/// its prior error magnitude is at least `delta2`.
struct NoveltyCriterion {
    double delta1 = 0.15;
    double delta2 = 0.2;
};

/// One kernel expansion term. coeff = a + ib, contributing
/// a kappa(center, .) + i b kappa(center, .) to the learned function.
struct DictionaryEntry {
    CVec center;
    cplx coeff;
};

struct CklmsStep {
    cplx prediction;
    cplx error;
    bool admitted;
};

struct CklmsConfig {
    RealKernel kernel = RealKernel::gaussian(5.0);
    double mu = 0.5;
    /// NCKLMS: scale the step by 1 / (2 kappa(z, z)).
    bool normalized = true;
    std::optional<NoveltyCriterion> novelty;
};

/// Complex kernel LMS in the complexification of a real RKHS.
///
/// The learned function is w = sum_k a_k kappa(z_k, .) + i sum_k b_k kappa(z_k, .)
/// and the output for input z is
///
///   <Phi(z), w> = sum_k (a_k + b_k) kappa(z, z_k) + i sum_k (a_k - b_k) kappa(z, z_k).
///
/// Each step appends (z, a + ib) with a = mu (Re e + Im e) / gamma and
/// b = mu (Re e - Im e) / gamma, where gamma = 2 kappa(z, z) when normalized
/// and 1 otherwise. Stored coefficients are never revisited.
class CklmsFilter {
public:
    explicit CklmsFilter(CklmsConfig config);

    const CklmsConfig& config() const noexcept { return config_; }
    const RealKernel& kernel() const noexcept { return config_.kernel; }

    cplx predict(CSpan z) const;

    /// Predict, compute the error, and append z when the novelty criterion
    /// admits it. Non-finite z or d throws std::domain_error with the state
    /// unchanged; a dimension mismatch throws std::invalid_argument.
    CklmsStep step(CSpan z, cplx d);

    /// Novelty decision for z given its prior error e. Always true without a
    /// configured criterion.
    bool admit(CSpan z, cplx e) const;

    std::size_t dictionary_size() const noexcept { return entries_.size(); }
    const std::vector<DictionaryEntry>& dictionary() const noexcept { return entries_; }
    std::size_t samples_seen() const noexcept { return samples_seen_; }
    /// Input dimension, fixed by the first sample (0 before that).
    std::size_t input_dimension() const noexcept { return nu_; }

    /// One line per entry: Re/Im of each center component, then Re/Im of the
    /// coefficient, whitespace-separated, 17 significant digits.
    void write_dictionary(std::ostream& os) const;

    /// Replaces the dictionary with the entries read from `is`.
    void read_dictionary(std::istream& is);

private:
    void check_dimension(CSpan z) const;
    double min_distance(const std::vector<double>& kernel_row, double k_zz) const;

    CklmsConfig config_;
    std::vector<DictionaryEntry> entries_;
    std::vector<double> self_similarity_; // kappa(z_k, z_k) per entry
    std::size_t nu_ = 0;
    std::size_t samples_seen_ = 0;
};

} // namespace ckaf
