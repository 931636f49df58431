// Writes a phantom PNG stack for the CLI smoke test.
// usage: make_phantom_stack <dir> <n> [flat]

#include <cstdio>
#include <string>

#include "support/phantom.hpp"

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: make_phantom_stack <dir> <n> [flat]\n");
        return 2;
    }
    const auto n = static_cast<std::size_t>(std::stoul(argv[2]));
    if (argc > 3 && std::string(argv[3]) == "flat") {
        cov3d::testing::write_png_stack(cov3d::Volume(cov3d::Dims{n, n, n}, 0.8f), argv[1]);
    } else {
        cov3d::testing::write_png_stack(cov3d::testing::make_lung_phantom(n).volume, argv[1]);
    }
    return 0;
}
