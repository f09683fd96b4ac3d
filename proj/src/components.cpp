#include "components.hpp"

namespace floodfuse::detail {

std::vector<std::int64_t> label_flooded_components(const FloodMask& mask,
                                                   std::vector<std::int32_t>& labels) {
    const int w = mask.width(), h = mask.height();
    labels.assign(static_cast<std::size_t>(w) * h, -1);
    std::vector<std::int64_t> sizes;
    std::vector<std::int32_t> stack;
    const auto st = mask.states();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;
            if (st[idx] != MaskState::Flooded || labels[idx] >= 0) continue;
            const std::int32_t id = static_cast<std::int32_t>(sizes.size());
            sizes.push_back(0);
            labels[idx] = id;
            stack.push_back(static_cast<std::int32_t>(idx));
            while (!stack.empty()) {
                const std::int32_t cur = stack.back();
                stack.pop_back();
                ++sizes[id];
                const int cy = cur / w, cx = cur % w;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx, ny = cy + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        const std::size_t n = static_cast<std::size_t>(ny) * w + nx;
                        if (st[n] == MaskState::Flooded && labels[n] < 0) {
                            labels[n] = id;
                            stack.push_back(static_cast<std::int32_t>(n));
                        }
                    }
                }
            }
        }
    }
    return sizes;
}

}  // namespace floodfuse::detail
