#include "ssd/metrics.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ssd {

std::string to_string(MetricKind kind)
{
	switch (kind) {
	case MetricKind::M0:
		return "m0";
	case MetricKind::M1:
		return "m1";
	case MetricKind::M2:
		return "m2";
	case MetricKind::M3:
		return "m3";
	}
	return "unknown";
}

MetricKind metric_kind_from_string(const std::string &name)
{
	std::string lower;
	for (char c : name)
		lower.push_back(char(std::tolower(static_cast<unsigned char>(c))));
	for (auto kind : kAllMetricKinds)
		if (to_string(kind) == lower)
			return kind;
	throw std::invalid_argument("unknown metric '" + name + "' (expected m0, m1, m2 or m3)");
}

double log_cosh(double z)
{
	const double a = std::abs(z);
	return a - std::numbers::ln2 + std::log1p(std::exp(-2 * a));
}

double metric_m0(int level, int N)
{
	return double(N - level + 1);
}

double h1(std::span<const double> y_suffix, double E, double N0)
{
	const double scale = 2 * std::sqrt(E) / N0;
	double sum = 0;
	for (double y : y_suffix)
		sum += log_cosh(scale * y);
	return sum + double(y_suffix.size()) * std::numbers::ln2;
}

std::vector<double> suffix_symbols(const GeneratorMatrix &F, std::span<const uint8_t> v_suffix)
{
	const int N = F.length();
	const int first = N - int(v_suffix.size());
	if (first < 0)
		throw std::invalid_argument("path longer than the code");
	std::vector<double> s(v_suffix.size());
	for (int l = first; l < N; ++l) {
		int parity = 0;
		for (int j = l; j < N; ++j)
			parity ^= F.at(j, l) & v_suffix[size_t(j - first)];
		s[size_t(l - first)] = 1.0 - 2.0 * parity;
	}
	return s;
}

namespace {

void check_suffix(std::span<const double> s_suffix, std::span<const double> y_suffix)
{
	if (s_suffix.size() != y_suffix.size())
		throw std::invalid_argument("symbol and received suffixes differ in length");
}

} // namespace

double direct_sed(std::span<const double> s_suffix, std::span<const double> y_suffix, double E)
{
	check_suffix(s_suffix, y_suffix);
	double d = 0;
	for (size_t k = s_suffix.size(); k-- > 0;)
		d = sed_extend(d, s_suffix[k], y_suffix[k], E);
	return d;
}

double metric_m1(std::span<const double> s_suffix, std::span<const double> y_suffix, double E, double N0)
{
	check_suffix(s_suffix, y_suffix);
	const double scale = 2 * std::sqrt(E) / N0;
	double corr = 0;
	for (size_t k = 0; k < s_suffix.size(); ++k)
		corr += scale * y_suffix[k] * s_suffix[k];
	return corr - h1(y_suffix, E, N0);
}

double metric_m2(std::span<const double> s_suffix, std::span<const double> y_suffix)
{
	check_suffix(s_suffix, y_suffix);
	double sum = 0;
	for (size_t k = 0; k < s_suffix.size(); ++k)
		sum += y_suffix[k] * s_suffix[k] - std::abs(y_suffix[k]);
	return sum;
}

double metric_m3(std::span<const double> s_suffix, std::span<const double> y_suffix, double E, double N0)
{
	check_suffix(s_suffix, y_suffix);
	const double scale = 2 * std::sqrt(E) / N0;
	double corr = 0, energy = 0;
	for (size_t k = 0; k < s_suffix.size(); ++k) {
		corr += scale * y_suffix[k] * s_suffix[k];
		energy += 2 * E * y_suffix[k] * y_suffix[k] / (N0 * N0);
	}
	return corr - energy - double(s_suffix.size()) * std::numbers::ln2;
}

double direct_metric(MetricKind kind, std::span<const double> s_suffix, std::span<const double> y_suffix, const ChannelParams &params)
{
	switch (kind) {
	case MetricKind::M0:
		check_suffix(s_suffix, y_suffix);
		return double(s_suffix.size());
	case MetricKind::M1:
		return metric_m1(s_suffix, y_suffix, params.E, params.N0);
	case MetricKind::M2:
		return metric_m2(s_suffix, y_suffix);
	case MetricKind::M3:
		return metric_m3(s_suffix, y_suffix, params.E, params.N0);
	}
	throw std::logic_error("unhandled metric kind");
}

MetricTable::MetricTable(std::span<const double> y, const ChannelParams &params, MetricKind kind)
    : kind_(kind), plus_(y.size()), minus_(y.size()), h1_suffix_(y.size() + 1, 0.0)
{
	params.validate();
	const double scale = 2 * std::sqrt(params.E) / params.N0;
	for (size_t l = 0; l < y.size(); ++l) {
		switch (kind) {
		case MetricKind::M0:
			plus_[l] = minus_[l] = 1.0;
			break;
		case MetricKind::M1: {
			const double corr = scale * y[l];
			const double correction = log_cosh(corr) + std::numbers::ln2;
			plus_[l] = corr - correction;
			minus_[l] = -corr - correction;
			break;
		}
		case MetricKind::M2:
			plus_[l] = y[l] - std::abs(y[l]);
			minus_[l] = -y[l] - std::abs(y[l]);
			break;
		case MetricKind::M3: {
			const double corr = scale * y[l];
			const double correction = 2 * params.E * y[l] * y[l] / (params.N0 * params.N0) + std::numbers::ln2;
			plus_[l] = corr - correction;
			minus_[l] = -corr - correction;
			break;
		}
		}
	}
	if (kind == MetricKind::M1 || kind == MetricKind::M3)
		for (size_t l = y.size(); l-- > 0;)
			h1_suffix_[l] = h1_suffix_[l + 1] + log_cosh(scale * y[l]) + std::numbers::ln2;
}

double MetricTable::evaluate(std::span<const uint8_t> x_suffix) const
{
	const int first = length() - int(x_suffix.size());
	if (first < 0)
		throw std::invalid_argument("path longer than the code");
	double m = 0;
	for (int l = length() - 1; l >= first; --l)
		m += increment(l, x_suffix[size_t(l - first)]);
	return m;
}

} // namespace ssd
