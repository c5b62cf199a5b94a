#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ssd::detail {

// Stack of candidate paths, highest priority on top. Priority is the metric,
// then the deeper level, then bit 0 over bit 1, then the most recent push.
//
// The level-bucket mode is for metrics that equal the path length (M0): the
// metric order then coincides with the level order and each (level, bit)
// bucket is a plain LIFO stack, giving the same pop sequence as the heap.
class PathQueue
{
public:
	void reset(bool by_level, int levels)
	{
		by_level_ = by_level;
		size_ = 0;
		seq_ = 0;
		heap_.clear();
		if (by_level_) {
			buckets_.resize(2 * size_t(levels + 2));
			for (auto &b : buckets_)
				b.clear();
			deepest_ = levels + 1;
		}
	}

	bool empty() const { return size_ == 0; }
	size_t size() const { return size_; }

	void push(double metric, int level, uint8_t bit, uint32_t slot)
	{
		++size_;
		if (by_level_) {
			buckets_[2 * size_t(level) + bit].push_back(slot);
			deepest_ = std::min(deepest_, level);
			return;
		}
		const uint64_t rank = (uint64_t((1 << 21) - level) << 43) | (uint64_t(1 - bit) << 42) | (seq_++ & kSeqMask);
		heap_.push_back({metric, rank, slot});
		std::push_heap(heap_.begin(), heap_.end(), Order{});
	}

	uint32_t pop()
	{
		--size_;
		if (by_level_) {
			for (;; ++deepest_) {
				for (uint8_t bit : {0, 1}) {
					auto &bucket = buckets_[2 * size_t(deepest_) + bit];
					if (!bucket.empty()) {
						const uint32_t slot = bucket.back();
						bucket.pop_back();
						return slot;
					}
				}
			}
		}
		std::pop_heap(heap_.begin(), heap_.end(), Order{});
		const uint32_t slot = heap_.back().slot;
		heap_.pop_back();
		return slot;
	}

private:
	static constexpr uint64_t kSeqMask = (uint64_t(1) << 42) - 1;

	// rank packs the tie-breaks: level in bits 63..43, bit in 42, push order below
	struct Entry
	{
		double metric;
		uint64_t rank;
		uint32_t slot;
	};
	struct Order
	{
		bool operator()(const Entry &a, const Entry &b) const
		{
			return a.metric < b.metric || (a.metric == b.metric && a.rank < b.rank);
		}
	};

	bool by_level_ = false;
	size_t size_ = 0;
	uint64_t seq_ = 0;
	int deepest_ = 0;
	std::vector<Entry> heap_;
	std::vector<std::vector<uint32_t>> buckets_;
};

} // namespace ssd::detail
