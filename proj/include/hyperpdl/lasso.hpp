#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hyperpdl {

// Ultimately periodic word stem . period^omega.  Positions past the stem are
// folded back so that the word has stem.size() + period.size() distinct
// positions.
template <class T>
struct LassoWord {
    std::vector<T> stem;
    std::vector<T> period;

    std::size_t length() const { return stem.size() + period.size(); }

    std::size_t normalize(std::size_t pos) const {
        if (pos < stem.size()) return pos;
        return stem.size() + (pos - stem.size()) % period.size();
    }

    std::size_t next(std::size_t pos) const {
        return pos + 1 < length() ? pos + 1 : stem.size();
    }

    const T& at(std::size_t pos) const {
        pos = normalize(pos);
        return pos < stem.size() ? stem[pos] : period[pos - stem.size()];
    }

    // The same word with a stem of `s` and a period of `p` letters;
    // p must be a multiple of period.size() and s >= stem.size().
    LassoWord unrolled(std::size_t s, std::size_t p) const {
        if (period.empty() || s < stem.size() || p % period.size() != 0)
            throw std::invalid_argument("invalid lasso unrolling");
        LassoWord out;
        for (std::size_t i = 0; i < s; ++i) out.stem.push_back(at(i));
        for (std::size_t i = 0; i < p; ++i) out.period.push_back(at(s + i));
        return out;
    }

    // suffix starting at position i
    LassoWord suffix(std::size_t i) const {
        LassoWord out;
        std::size_t n = normalize(i);
        if (n < stem.size()) {
            out.stem.assign(stem.begin() + n, stem.end());
            out.period = period;
        } else {
            std::size_t off = n - stem.size();
            out.period.assign(period.begin() + off, period.end());
            out.period.insert(out.period.end(), period.begin(), period.begin() + off);
        }
        return out;
    }

    bool operator==(const LassoWord&) const = default;
};

// One position of a path: the world (KTS state or proposition set) and the
// atomic program taken to the next position.
struct PathStep {
    int world = 0;
    int prog = 0;
    bool operator==(const PathStep&) const = default;
};

using PathLasso = LassoWord<PathStep>;

}  // namespace hyperpdl
