#include "lnd/varset.hpp"

#include <cctype>
#include <stdexcept>

namespace lnd {

bool is_identifier(std::string_view name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    for (char c : name.substr(1))
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::shared_ptr<const VarSet> VarSet::make(std::vector<std::string> names,
                                           std::vector<bool> param_flags) {
    if (names.size() != param_flags.size())
        throw std::invalid_argument("VarSet: names/param_flags size mismatch");
    auto vs = std::make_shared<VarSet>();
    vs->names_ = std::move(names);
    vs->param_ = std::move(param_flags);
    for (std::size_t i = 0; i < vs->names_.size(); ++i) {
        const std::string& n = vs->names_[i];
        if (!is_identifier(n))
            throw std::invalid_argument("VarSet: bad variable name '" + n + "'");
        if (!vs->index_.emplace(n, i).second)
            throw std::invalid_argument("VarSet: duplicate variable '" + n + "'");
        if (!vs->param_[i]) {
            vs->plain_.push_back(i);
            ++vs->n_plain_;
        }
    }
    return vs;
}

std::shared_ptr<const VarSet> VarSet::make(std::vector<std::string> names) {
    std::vector<bool> flags(names.size(), false);
    return make(std::move(names), std::move(flags));
}

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

}  // namespace lnd
