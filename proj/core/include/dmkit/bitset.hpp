// Copyright 2026 The dmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dmkit {

/// Fixed-width bitset sized at construction. Unused high bits of the last word
/// are kept zero so popcounts stay exact after complement().
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

    std::size_t width() const noexcept { return width_; }

    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    /// popcount(*this & other) without materializing the intersection.
    std::size_t count_and(const Bitset& other) const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return n;
    }

    Bitset& operator&=(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }

    Bitset& operator|=(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    Bitset complement() const {
        Bitset out(width_);
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
        out.trim();
        return out;
    }

    void set_all() {
        for (auto& w : words_) w = ~std::uint64_t{0};
        trim();
    }

    /// Indices of set bits in ascending order.
    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    void trim() {
        if (width_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (width_ % 64)) - 1;
    }

    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace dmkit
