// Copyright 2026 The Faultline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace faultline {

/// A set of syndrome-graph edge ids, kept sorted and unique.
/// Addition is symmetric difference.
class Chain {
   public:
    Chain() = default;
    Chain(std::initializer_list<uint32_t> ids) : ids_(ids) { normalize(); }
    explicit Chain(std::vector<uint32_t> ids) : ids_(std::move(ids)) { normalize(); }

    /// Builds from ids that are already sorted and unique.
    static Chain from_sorted(std::vector<uint32_t> ids) {
        Chain c;
        c.ids_ = std::move(ids);
        return c;
    }

    size_t weight() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    const std::vector<uint32_t> &edges() const { return ids_; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    bool contains(uint32_t e) const { return std::binary_search(ids_.begin(), ids_.end(), e); }

    Chain operator^(const Chain &other) const {
        Chain out;
        out.ids_.reserve(ids_.size() + other.ids_.size());
        std::set_symmetric_difference(
            ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(), std::back_inserter(out.ids_));
        return out;
    }
    Chain &operator^=(const Chain &other) { return *this = *this ^ other; }

    Chain intersection(const Chain &other) const {
        Chain out;
        std::set_intersection(
            ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(), std::back_inserter(out.ids_));
        return out;
    }

    bool operator==(const Chain &) const = default;

   private:
    void normalize() {
        // Pairs of repeated ids cancel.
        std::sort(ids_.begin(), ids_.end());
        std::vector<uint32_t> out;
        out.reserve(ids_.size());
        for (size_t i = 0; i < ids_.size();) {
            size_t j = i;
            while (j < ids_.size() && ids_[j] == ids_[i]) ++j;
            if ((j - i) % 2 == 1) out.push_back(ids_[i]);
            i = j;
        }
        ids_ = std::move(out);
    }

    std::vector<uint32_t> ids_;
};

}  // namespace faultline
