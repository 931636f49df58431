#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace cov3d {

/// Ground truth for one scan: a full class index (0 = negative,
/// 1..4 = mild..critical) or "positive, severity unknown".
class CategoryLabel {
public:
    static CategoryLabel full(int category) { return CategoryLabel(category); }
    static CategoryLabel positive_unknown() { return CategoryLabel(kPositiveUnknown); }

    bool is_full() const { return value_ != kPositiveUnknown; }
    bool is_positive_unknown() const { return value_ == kPositiveUnknown; }

    /// Only meaningful when is_full().
    int category() const { return value_; }

    bool is_positive() const { return value_ != 0; }

    friend bool operator==(const CategoryLabel&, const CategoryLabel&) = default;

private:
    static constexpr int kPositiveUnknown = -1;
    explicit CategoryLabel(int v) : value_(v) {}
    int value_;
};

namespace category {
inline constexpr int kNegative = 0;
inline constexpr int kMild = 1;
inline constexpr int kModerate = 2;
inline constexpr int kSevere = 3;
inline constexpr int kCritical = 4;
inline constexpr int kCount = 5;
}  // namespace category

/// Manifest spelling: negative, mild, moderate, severe, critical,
/// positive_unknown. "unlabeled" parses to std::nullopt; anything else throws.
std::optional<CategoryLabel> parse_label(std::string_view text);
std::string label_name(const std::optional<CategoryLabel>& label);
std::string severity_name(int category);

}  // namespace cov3d
