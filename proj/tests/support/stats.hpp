// Statistical helpers for the sampling tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace testsupport {

// Pearson goodness-of-fit p-value; counts vs expected probabilities.
inline double chi_square_pvalue(const std::vector<int64_t>& counts,
                                const std::vector<double>& probs) {
    if (counts.size() != probs.size() || counts.size() < 2)
        throw std::invalid_argument("bad chi-square input");
    int64_t total = 0;
    for (int64_t c : counts) total += c;
    double stat = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
        double expected = probs[i] * static_cast<double>(total);
        if (expected <= 0) throw std::invalid_argument("zero expected cell");
        double d = static_cast<double>(counts[i]) - expected;
        stat += d * d / expected;
    }
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

// One-sided Mann-Whitney U p-value for H1: values in `smaller` are
// stochastically smaller than values in `larger`. Normal approximation
// with tie correction; fine at the sample sizes used here.
inline double mann_whitney_less(const std::vector<double>& smaller,
                                const std::vector<double>& larger) {
    size_t n1 = smaller.size(), n2 = larger.size();
    if (n1 < 8 || n2 < 8) throw std::invalid_argument("samples too small");
    struct Tagged {
        double value;
        int group;
    };
    std::vector<Tagged> all;
    all.reserve(n1 + n2);
    for (double v : smaller) all.push_back({v, 0});
    for (double v : larger) all.push_back({v, 1});
    std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) {
        return a.value < b.value;
    });
    // midranks and tie groups
    double rank_sum1 = 0;
    double tie_term = 0;
    size_t i = 0;
    while (i < all.size()) {
        size_t j = i;
        while (j < all.size() && all[j].value == all[i].value) ++j;
        double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        for (size_t p = i; p < j; ++p)
            if (all[p].group == 0) rank_sum1 += midrank;
        i = j;
    }
    double u1 = rank_sum1 - static_cast<double>(n1) * (static_cast<double>(n1) + 1) / 2.0;
    double n = static_cast<double>(n1 + n2);
    double mean = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;
    double var = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                 (n + 1 - tie_term / (n * (n - 1)));
    if (var <= 0) return 1.0;  // all values tied
    double z = (u1 + 0.5 - mean) / std::sqrt(var);
    boost::math::normal norm;
    return boost::math::cdf(norm, z);
}

} // namespace testsupport
