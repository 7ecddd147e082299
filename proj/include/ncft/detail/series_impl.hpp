#pragma once

#include <vector>

namespace ncft {

template <class Fn>
void for_each_word_product(const OperatorTuple& X, int maxDeg, Fn&& fn) {
    struct Frame {
        Word w;
        CMatrix P;
    };
    const auto d = static_cast<Eigen::Index>(X.dim());
    std::vector<Frame> level;
    level.push_back({Word{}, CMatrix::Identity(d, d)});
    fn(level[0].w, level[0].P);
    for (int k = 1; k <= maxDeg && !level.empty(); ++k) {
        std::vector<Frame> next;
        next.reserve(level.size() * static_cast<std::size_t>(X.n()));
        for (const auto& fr : level) {
            for (int i = 1; i <= X.n(); ++i) {
                CMatrix P = fr.P * X[i - 1];
                if (P.cwiseAbs().maxCoeff() == 0.0) continue;
                Word w = fr.w.append(i);
                fn(w, P);
                next.push_back({std::move(w), std::move(P)});
            }
        }
        level = std::move(next);
    }
}

}  // namespace ncft
