#include "ssd/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <set>
#include <string>
#include <utility>

namespace ssd {

StackSphereDecoder::StackSphereDecoder(CodeSpec spec, MetricKind kind, DecoderOptions options)
    : spec_(std::move(spec)), kind_(kind), options_(options), F_((spec_.validate(), spec_.n)), words_(F_.words_per_row())
{
}

uint32_t StackSphereDecoder::allocate()
{
	if (!free_.empty()) {
		const uint32_t slot = free_.back();
		free_.pop_back();
		return slot;
	}
	const auto slot = uint32_t(paths_.size());
	paths_.push_back({});
	slab_.resize(slab_.size() + 2 * size_t(words_), 0);
	return slot;
}

void StackSphereDecoder::release(uint32_t slot)
{
	free_.push_back(slot);
}

DecodeResult StackSphereDecoder::decode(std::span<const double> y, const ChannelParams &params)
{
	const int N = spec_.N;
	if (y.size() != size_t(N))
		throw std::invalid_argument("received vector length " + std::to_string(y.size()) + " does not match N = " + std::to_string(N));
	params.validate();

	const MetricTable table(y, params, kind_);
	const double amplitude = std::sqrt(params.E);
	// same arithmetic as sed_extend(), with the square root hoisted
	auto extend = [amplitude](double parent, uint8_t x, double received) {
		const double diff = received - amplitude * (1.0 - 2.0 * x);
		return parent + diff * diff;
	};
	slab_.clear();
	paths_.clear();
	free_.clear();
	queue_.reset(kind_ == MetricKind::M0 && !options_.force_heap, N);

	DecodeResult result;
	DecodeStats &stats = result.stats;
	double radius_sq = std::numeric_limits<double>::infinity();
	bool have_estimate = false;
	std::set<std::pair<int, std::vector<uint64_t>>> seen;

	auto push = [&](uint32_t slot, uint8_t bit) {
		const SearchPath &p = paths_[slot];
		queue_.push(p.metric, p.level, bit, slot);
		stats.max_stack = std::max<uint64_t>(stats.max_stack, queue_.size());
		if (options_.stack_cap && queue_.size() > *options_.stack_cap)
			throw ResourceExhausted("stack exceeded cap of " + std::to_string(*options_.stack_cap) + " paths");
	};
	auto note_generated = [&](int level, const uint64_t *path_bits, int pos, uint8_t bit) {
		std::vector<uint64_t> key(path_bits, path_bits + words_);
		if (bit)
			key[size_t(pos >> 6)] |= uint64_t(1) << (pos & 63);
		if (!seen.emplace(level, std::move(key)).second)
			throw DecoderDefect("path at level " + std::to_string(level) + " generated twice");
	};
	auto trace = [&](const SearchPath &p, const char *action) {
		if (options_.trace)
			*options_.trace << "level=" << p.level << " sed=" << p.sed << " metric=" << p.metric << " action=" << action << '\n';
	};

	const uint32_t root = allocate();
	std::fill_n(bits(root), 2 * words_, 0);
	paths_[root] = {N + 1, 0.0, 0.0};
	push(root, 0);

	while (!queue_.empty()) {
		const uint32_t slot = queue_.pop();
		++stats.pops;
		const SearchPath path = paths_[slot];

		if (!(path.sed < radius_sq)) {
			trace(path, "prune");
			release(slot);
			continue;
		}
		if (path.level == 1) {
			trace(path, "record");
			result.v_hat.assign(size_t(N), 0);
			const uint64_t *b = bits(slot);
			for (int i = 0; i < N; ++i)
				result.v_hat[size_t(i)] = uint8_t((b[i >> 6] >> (i & 63)) & 1);
			radius_sq = path.sed;
			have_estimate = true;
			++stats.radius_updates;
			release(slot);
			continue;
		}
		trace(path, "expand");

		const int pos = path.level - 2;
		const int child_level = path.level - 1;
		const uint8_t carried = uint8_t((parity(slot)[pos >> 6] >> (pos & 63)) & 1);

		if (!spec_.frozen(pos)) {
			const uint8_t x = carried ^ 1;
			const double sed = extend(path.sed, x, y[size_t(pos)]);
			const double metric = path.metric + table.increment(pos, x);
			++stats.node_visits;
			if (options_.check_unique_paths)
				note_generated(child_level, bits(slot), pos, 1);
			if (sed < radius_sq) {
				const uint32_t child = allocate();
				std::memcpy(bits(child), bits(slot), 2 * size_t(words_) * sizeof(uint64_t));
				bits(child)[pos >> 6] |= uint64_t(1) << (pos & 63);
				const auto row = F_.row(pos);
				uint64_t *par = parity(child);
				for (int w = 0; w <= (pos >> 6); ++w)
					par[w] ^= row[size_t(w)];
				paths_[child] = {child_level, sed, metric};
				push(child, 1);
			}
		}

		// the zero child inherits the parent's slot: its bits and parities are unchanged
		const uint8_t x = carried;
		const double sed = extend(path.sed, x, y[size_t(pos)]);
		const double metric = path.metric + table.increment(pos, x);
		++stats.node_visits;
		if (options_.check_unique_paths)
			note_generated(child_level, bits(slot), pos, 0);
		if (sed < radius_sq) {
			paths_[slot] = {child_level, sed, metric};
			push(slot, 0);
		} else {
			release(slot);
		}
	}

	if (!have_estimate)
		throw DecoderDefect("search ended without a complete path");
	result.final_radius_sq = radius_sq;
	result.u_hat = unscramble(result.v_hat);
	return result;
}

DecodeResult ssd_decode(std::span<const double> y, const CodeSpec &spec, const ChannelParams &params, MetricKind kind, DecoderOptions options)
{
	return StackSphereDecoder(spec, kind, options).decode(y, params);
}

} // namespace ssd
