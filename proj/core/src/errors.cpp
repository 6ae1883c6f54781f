#include "storyboard/errors.hpp"

#include <algorithm>

namespace storyboard {

namespace {

std::string join_unresolved(const std::vector<std::string>& names)
{
    std::string msg = "unresolved references:";
    for (const auto& n : names) {
        msg += "\n  " + n;
    }
    return msg;
}

} // namespace

LinkError::LinkError(std::vector<std::string> unresolved)
    : Error(join_unresolved(unresolved)), unresolved_(std::move(unresolved))
{
}

std::size_t Diagnostics::count(const std::string& code) const
{
    return static_cast<std::size_t>(std::count_if(
            items_.begin(), items_.end(),
            [&](const Warning& w) { return w.code == code; }));
}

} // namespace storyboard
