#include "qmc/kernels.hpp"

#include "qmc/error.hpp"

namespace qmc::kernels {

namespace {

const Backend* g_forced = nullptr;

const Backend& auto_backend() {
    if (const Backend* simd = avx2_backend()) return *simd;
    return scalar_backend();
}

} // namespace

const Backend& active_backend() { return g_forced ? *g_forced : auto_backend(); }

void set_backend(const std::string& name) {
    if (name == "auto") {
        g_forced = nullptr;
        return;
    }
    if (name == "scalar") {
        g_forced = &scalar_backend();
        return;
    }
    if (name == "avx2") {
        const Backend* simd = avx2_backend();
        if (!simd) fail(errc::invalid_argument, "avx2 kernel not available on this machine");
        g_forced = simd;
        return;
    }
    fail(errc::invalid_argument, "unknown kernel backend '" + name + "'");
}

} // namespace qmc::kernels
