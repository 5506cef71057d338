#include "ckaf/cklms.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ckaf {

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// (a + b) + i (a - b) for coeff = a + ib
cplx output_weight(cplx coeff) {
    const double a = coeff.real();
    const double b = coeff.imag();
    return {a + b, a - b};
}

} // namespace

CklmsFilter::CklmsFilter(CklmsConfig config) : config_(std::move(config)) {
    if (!(config_.mu >= 0.0) || !std::isfinite(config_.mu)) {
        throw std::invalid_argument("cklms: mu must be finite and >= 0");
    }
    if (config_.novelty) {
        const auto& nc = *config_.novelty;
        if (!(nc.delta1 >= 0.0) || !(nc.delta2 >= 0.0)) {
            throw std::invalid_argument("cklms: novelty thresholds must be >= 0");
        }
    }
}

void CklmsFilter::check_dimension(CSpan z) const {
    if (z.empty()) throw std::invalid_argument("cklms: empty input vector");
    if (nu_ != 0 && z.size() != nu_) {
        throw std::invalid_argument("cklms: input dimension " + std::to_string(z.size()) +
                                    " does not match dictionary dimension " + std::to_string(nu_));
    }
}

cplx CklmsFilter::predict(CSpan z) const {
    check_dimension(z);
    double re = 0.0;
    double im = 0.0;
    for (const auto& entry : entries_) {
        const double k = config_.kernel.eval(z, entry.center);
        const cplx w = output_weight(entry.coeff);
        re += w.real() * k;
        im += w.imag() * k;
    }
    return {re, im};
}

double CklmsFilter::min_distance(const std::vector<double>& kernel_row, double k_zz) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        best = std::min(best, feature_distance_sq(k_zz, kernel_row[k], self_similarity_[k]));
    }
    return std::sqrt(best);
}

bool CklmsFilter::admit(CSpan z, cplx e) const {
    if (!config_.novelty) return true;
    check_dimension(z);
    std::vector<double> row(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k) row[k] = config_.kernel.eval(z, entries_[k].center);
    const double dis = min_distance(row, config_.kernel.eval(z, z));
    if (dis < config_.novelty->delta1) return false;
    return std::abs(e) >= config_.novelty->delta2;
}

CklmsStep CklmsFilter::step(CSpan z, cplx d) {
    check_dimension(z);
    if (!finite(d)) throw std::domain_error("cklms: non-finite desired sample");
    for (const auto& v : z) {
        if (!finite(v)) throw std::domain_error("cklms: non-finite input sample");
    }

    // One kernel row serves both the output and the novelty distance.
    std::vector<double> row(entries_.size());
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        row[k] = config_.kernel.eval(z, entries_[k].center);
        const cplx w = output_weight(entries_[k].coeff);
        re += w.real() * row[k];
        im += w.imag() * row[k];
    }
    const cplx prediction{re, im};
    const cplx error = d - prediction;
    const double k_zz = config_.kernel.eval(z, z);

    bool admitted = true;
    if (config_.novelty) {
        admitted = min_distance(row, k_zz) >= config_.novelty->delta1 &&
                   std::abs(error) >= config_.novelty->delta2;
    }

    if (admitted) {
        const double gamma = config_.normalized ? 2.0 * k_zz : 1.0;
        const double scale = config_.mu / gamma;
        const cplx coeff{scale * (error.real() + error.imag()), scale * (error.real() - error.imag())};
        if (!finite(coeff)) throw std::domain_error("cklms: non-finite coefficient");
        entries_.push_back({CVec(z.begin(), z.end()), coeff});
        self_similarity_.push_back(k_zz);
    }
    nu_ = z.size();
    ++samples_seen_;
    return {prediction, error, admitted};
}

void CklmsFilter::write_dictionary(std::ostream& os) const {
    const auto old_precision = os.precision(17);
    for (const auto& entry : entries_) {
        for (const auto& c : entry.center) os << c.real() << ' ' << c.imag() << ' ';
        os << entry.coeff.real() << ' ' << entry.coeff.imag() << '\n';
    }
    os.precision(old_precision);
}

void CklmsFilter::read_dictionary(std::istream& is) {
    std::vector<DictionaryEntry> entries;
    std::vector<double> self;
    std::size_t nu = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::vector<double> values;
        double v = 0.0;
        while (ls >> v) values.push_back(v);
        if (!ls.eof()) throw std::runtime_error("dictionary line " + std::to_string(line_no) + ": bad number");
        if (values.empty()) continue;
        if (values.size() < 4 || values.size() % 2 != 0) {
            throw std::runtime_error("dictionary line " + std::to_string(line_no) +
                                     ": expected 2*nu + 2 values");
        }
        const std::size_t this_nu = values.size() / 2 - 1;
        if (nu != 0 && this_nu != nu) {
            throw std::runtime_error("dictionary line " + std::to_string(line_no) + ": dimension changed");
        }
        nu = this_nu;
        DictionaryEntry entry;
        entry.center.resize(nu);
        for (std::size_t j = 0; j < nu; ++j) entry.center[j] = {values[2 * j], values[2 * j + 1]};
        entry.coeff = {values[2 * nu], values[2 * nu + 1]};
        self.push_back(config_.kernel.eval(entry.center, entry.center));
        entries.push_back(std::move(entry));
    }
    entries_ = std::move(entries);
    self_similarity_ = std::move(self);
    nu_ = nu;
}

} // namespace ckaf
