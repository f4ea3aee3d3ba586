#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

namespace dynprice::detail {

/// out[i] = fn(i) for i in [0, count), fanned out with OpenMP. Results keep
/// index order; if any call throws, the exception of the lowest index is
/// rethrown after the loop.
template <typename Fn>
auto parallel_map(std::size_t count, Fn&& fn) {
    using Result = decltype(fn(std::size_t{}));
    std::vector<std::optional<Result>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n; ++i) {
        try {
            slots[i].emplace(fn(static_cast<std::size_t>(i)));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::vector<Result> out;
    out.reserve(count);
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

}  // namespace dynprice::detail
