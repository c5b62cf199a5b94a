/*
Squared Euclidean distance and stack-ordering path metrics

A path at level i covers v_i..v_N (1-based); the null path is level N+1.
All metrics follow "larger is better":

  M0 = N - i + 1                                         (path length)
  M1 = sum_{l>=i} (2 sqrt(E) / N0) y_l s_l - h1(y_i^N)   (exact ML ordering)
  M2 = sum_{l>=i} (y_l s_l - |y_l|)                      (high SNR)
  M3 = sum_{l>=i} (2 sqrt(E) / N0) y_l s_l
       - sum_{l>=i} 2 E y_l^2 / N0^2 - (N - i + 1) log 2 (low SNR)

  h1(y_i^N) = sum_{l>=i} log cosh(2 sqrt(E) y_l / N0) + (N - i + 1) log 2
*/

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ssd/channel.hpp"
#include "ssd/codes.hpp"

namespace ssd {

enum class MetricKind
{
	M0,
	M1,
	M2,
	M3,
};

inline constexpr std::array<MetricKind, 4> kAllMetricKinds{MetricKind::M0, MetricKind::M1, MetricKind::M2, MetricKind::M3};

/// "m0".."m3"
std::string to_string(MetricKind kind);
/// Accepts "m0".."m3" in either case.
MetricKind metric_kind_from_string(const std::string &name);

/// log(cosh(z)) without overflow: |z| - log 2 + log1p(exp(-2|z|)).
double log_cosh(double z);

/// parent_sed + (y - sqrt(E) s)^2
inline double sed_extend(double parent_sed, double s, double y, double E)
{
	const double diff = y - std::sqrt(E) * s;
	return parent_sed + diff * diff;
}

/// Path length; `level` is 1-based i in [1, N+1].
double metric_m0(int level, int N);

/// Correction term over the received suffix y_i^N. Empty suffix gives 0.
double h1(std::span<const double> y_suffix, double E, double N0);

/// BPSK symbols s_i..s_N of a path, from its bits v_i..v_N (x_l = sum_{j>=l} f_jl v_j).
std::vector<double> suffix_symbols(const GeneratorMatrix &F, std::span<const uint8_t> v_suffix);

/// Direct whole-suffix evaluations. `s_suffix` and `y_suffix` both cover
/// positions i..N; empty spans describe the null path.
double direct_sed(std::span<const double> s_suffix, std::span<const double> y_suffix, double E);
double metric_m1(std::span<const double> s_suffix, std::span<const double> y_suffix, double E, double N0);
double metric_m2(std::span<const double> s_suffix, std::span<const double> y_suffix);
double metric_m3(std::span<const double> s_suffix, std::span<const double> y_suffix, double E, double N0);
double direct_metric(MetricKind kind, std::span<const double> s_suffix, std::span<const double> y_suffix, const ChannelParams &params);

/// Per-position additive metric contributions for both symbol signs, so
/// metric(child) = metric(parent) + increment(pos, x). Built once per
/// received block.
class MetricTable
{
public:
	MetricTable(std::span<const double> y, const ChannelParams &params, MetricKind kind);

	MetricKind kind() const { return kind_; }
	int length() const { return int(plus_.size()); }

	/// Contribution of emitting code bit `x` (s = 1 - 2x) at 0-based position `pos`.
	double increment(int pos, uint8_t x) const { return x ? minus_[size_t(pos)] : plus_[size_t(pos)]; }

	/// h1(y_pos^N) for 0-based `pos`; h1_suffix(N) = 0. Only non-zero for M1 and M3.
	double h1_suffix(int pos) const { return h1_suffix_[size_t(pos)]; }

	/// Sum of increments along symbols covering positions N - |x_suffix| .. N-1.
	double evaluate(std::span<const uint8_t> x_suffix) const;

private:
	MetricKind kind_;
	std::vector<double> plus_;
	std::vector<double> minus_;
	std::vector<double> h1_suffix_;
};

} // namespace ssd
