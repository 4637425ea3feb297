#pragma once

#include <random>
#include <string>

#include "rcla/rcla.hpp"

namespace rcla::test {

inline std::string data_path(const std::string& name) { return std::string(RCLA_DATA_DIR) + "/" + name; }

inline AlignedMarket historical_market() {
    return align(load_series(data_path("sp500_tr_monthly.csv"), SeriesKind::total_return_index),
                 load_series(data_path("cpi_u_monthly.csv"), SeriesKind::cpi_index));
}

// property-test inputs; fixed seed so failures reproduce
inline constexpr int kCases = 100;

class Draw {
public:
    explicit Draw(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    std::uint64_t bits() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace rcla::test
