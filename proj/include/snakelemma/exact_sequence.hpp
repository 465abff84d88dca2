#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "snakelemma/abgroup.hpp"

namespace snakelemma {

/// terms[0] -> terms[1] -> ... with maps[i] : terms[i] -> terms[i+1].
/// exact_at(i) for interior i compares image(maps[i-1]) with kernel(maps[i])
/// as subgroups of terms[i].
class ExactSequence {
public:
    ExactSequence(std::vector<FpAbGroup> terms, std::vector<Hom> maps, std::vector<std::string> labels = {})
        : terms_(std::move(terms)), maps_(std::move(maps)), labels_(std::move(labels)) {
        detail::require(!terms_.empty() && maps_.size() + 1 == terms_.size(),
                        "ExactSequence: need one more term than maps");
        for (std::size_t i = 0; i < maps_.size(); ++i)
            detail::require(maps_[i].source() == terms_[i] && maps_[i].target() == terms_[i + 1],
                            "ExactSequence: map " + std::to_string(i) + " is not composable with its terms");
        if (labels_.empty())
            labels_.assign(terms_.size(), "");
        detail::require(labels_.size() == terms_.size(), "ExactSequence: one label per term");
        for (std::size_t i = 1; i + 1 < terms_.size(); ++i)
            exact_.push_back(image(maps_[i - 1]) == preimage(maps_[i], Subgroup::zero(terms_[i + 1])));
    }

    const std::vector<FpAbGroup>& terms() const noexcept { return terms_; }
    const std::vector<Hom>& maps() const noexcept { return maps_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Verdicts for interior positions 1 .. size()-2, in order.
    const std::vector<bool>& certificate() const noexcept { return exact_; }
    bool exact_at(std::size_t position) const {
        detail::require(position >= 1 && position + 1 < terms_.size(), "ExactSequence::exact_at: not interior");
        return exact_[position - 1];
    }
    bool fully_exact() const {
        for (bool b : exact_)
            if (!b)
                return false;
        return true;
    }

private:
    std::vector<FpAbGroup> terms_;
    std::vector<Hom> maps_;
    std::vector<std::string> labels_;
    std::vector<bool> exact_;
};

} // namespace snakelemma
