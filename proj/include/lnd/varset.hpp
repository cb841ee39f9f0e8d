#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lnd {

// An ordered set of variable names. The declaration order is fixed at
// construction and defines the graded-lexicographic monomial order used for
// all normalization and printing.
//
// A variable may be flagged as a "parameter" (a formal symbol such as t):
// every derivation has coefficient zero on parameters and every automorphism
// fixes them.
class VarSet {
public:
    static std::shared_ptr<const VarSet> make(std::vector<std::string> names,
                                              std::vector<bool> param_flags);
    // Convenience: plain variables, no parameters.
    static std::shared_ptr<const VarSet> make(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    bool is_param(std::size_t i) const { return param_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::size_t> index_of(std::string_view name) const;

    std::size_t non_param_count() const { return n_plain_; }
    // Indices of non-parameter variables, in declaration order.
    const std::vector<std::size_t>& non_param_indices() const { return plain_; }

    bool operator==(const VarSet& o) const {
        return names_ == o.names_ && param_ == o.param_;
    }

private:
    std::vector<std::string> names_;
    std::vector<bool> param_;
    std::vector<std::size_t> plain_;
    std::size_t n_plain_ = 0;
    std::unordered_map<std::string, std::size_t> index_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

inline bool same_varset(const VarSetPtr& a, const VarSetPtr& b) {
    return a == b || (a && b && *a == *b);
}

// Returns true iff `name` matches identifier syntax: letter (letter|digit|'_')*.
bool is_identifier(std::string_view name);

}  // namespace lnd
