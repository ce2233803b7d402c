// Copyright 2026 The sftrsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "sftrsv/csc_matrix.hpp"

namespace sftrsv::detail {

/// One PE's published arrays: per-component in-degree contribution and
/// partial sum, readable by every PE. Reads go through the const interface;
/// stores only through a SegmentWriter, which a worker obtains for its own PE.
class PublishedSegment {
 public:
  PublishedSegment(int owner_pe, std::size_t n) : owner_(owner_pe), in_degree_(n), left_sum_(n) {}

  int owner() const noexcept { return owner_; }

  /// Acquiring read: a value observed here carries every sum added before
  /// the matching decrement.
  std::int64_t in_degree(Index i) const noexcept {
    return in_degree_[i].load(std::memory_order_acquire);
  }
  double left_sum(Index i) const noexcept { return left_sum_[i].load(std::memory_order_relaxed); }

 private:
  friend class SegmentWriter;

  int owner_;
  std::vector<std::atomic<std::int64_t>> in_degree_;
  std::vector<std::atomic<double>> left_sum_;
};

class SegmentWriter {
 public:
  /// `violations` counts writers created by a PE other than the owner.
  SegmentWriter(PublishedSegment& segment, int writer_pe,
                std::atomic<std::uint64_t>& violations) noexcept
      : segment_(segment) {
    if (writer_pe != segment.owner()) violations.fetch_add(1, std::memory_order_relaxed);
  }

  void count_entry(Index i) noexcept {
    segment_.in_degree_[i].fetch_add(1, std::memory_order_relaxed);
  }

  /// Adds to the partial sum, then releases the decrement so a reader that
  /// sees the new count also sees the sum.
  void publish(Index i, double contribution) noexcept {
    segment_.left_sum_[i].fetch_add(contribution, std::memory_order_relaxed);
    segment_.in_degree_[i].fetch_sub(1, std::memory_order_release);
  }

 private:
  PublishedSegment& segment_;
};

}  // namespace sftrsv::detail
