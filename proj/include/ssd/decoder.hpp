/*
Stack sphere decoder

Best-first search over the code tree. Bit v_i sits at depth N - i + 1, so a
path grows from v_N down to v_1; thanks to the lower-triangular generator
each new bit fixes exactly one more channel symbol. Paths are kept in a
max-priority structure keyed by the chosen metric and pruned against the
running radius r^2 (the smallest SED of any complete path found so far).
The returned path minimizes the SED over all codewords whatever metric
orders the search; the metric only changes how much of the tree is visited.
*/

#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "ssd/channel.hpp"
#include "ssd/codes.hpp"
#include "ssd/detail/path_queue.hpp"
#include "ssd/metrics.hpp"

namespace ssd {

struct DecodeStats
{
	/// Child paths generated and evaluated (frozen levels generate one, others two).
	uint64_t node_visits = 0;
	uint64_t pops = 0;
	uint64_t max_stack = 0;
	uint64_t radius_updates = 0;
};

struct DecodeResult
{
	Bits u_hat;
	Bits v_hat;
	double final_radius_sq = 0;
	DecodeStats stats;
};

/// Thrown when the configured stack cap is exceeded.
class ResourceExhausted : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// Thrown when the search ends without a complete path.
class DecoderDefect : public std::logic_error
{
public:
	using std::logic_error::logic_error;
};

struct DecoderOptions
{
	/// Abort with ResourceExhausted once the stack holds more paths than this.
	std::optional<size_t> stack_cap;
	/// One line per pop: "level=<i> sed=<D> metric=<M> action=<expand|record|prune>".
	std::ostream *trace = nullptr;
	/// Track every generated path and throw DecoderDefect on a repeat.
	bool check_unique_paths = false;
	/// Order M0 searches with the binary heap instead of level buckets (same pop order).
	bool force_heap = false;
};

/// Header of a stacked path covering v_level..v_N (1-based level, N+1 for
/// the null path). Its bits and the running parities
/// p_l = sum_{j>=level} f_jl v_j (l < level) live in the decoder's slab.
struct SearchPath
{
	int level;
	double sed;
	double metric;
};

class StackSphereDecoder
{
public:
	StackSphereDecoder(CodeSpec spec, MetricKind kind, DecoderOptions options = {});

	const CodeSpec &spec() const { return spec_; }
	MetricKind kind() const { return kind_; }

	DecodeResult decode(std::span<const double> y, const ChannelParams &params);

private:
	uint32_t allocate();
	void release(uint32_t slot);
	uint64_t *bits(uint32_t slot) { return slab_.data() + size_t(slot) * 2 * words_; }
	uint64_t *parity(uint32_t slot) { return bits(slot) + words_; }

	CodeSpec spec_;
	MetricKind kind_;
	DecoderOptions options_;
	GeneratorMatrix F_;
	int words_;
	std::vector<uint64_t> slab_;
	std::vector<SearchPath> paths_;
	std::vector<uint32_t> free_;
	detail::PathQueue queue_;
};

DecodeResult ssd_decode(std::span<const double> y, const CodeSpec &spec, const ChannelParams &params, MetricKind kind,
                        DecoderOptions options = {});

} // namespace ssd
