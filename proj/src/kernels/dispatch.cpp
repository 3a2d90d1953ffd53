#include <cstdlib>
#include <stdexcept>

#include "greenstream/kernels/kernels.hpp"

namespace greenstream::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(GREENSTREAM_BUILD_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops* ops_for(Backend b) {
    switch (b) {
    case Backend::scalar:
        return &scalar_ops();
    case Backend::avx2:
#if defined(GREENSTREAM_BUILD_AVX2)
        return &avx2_ops();
#else
        return nullptr;
#endif
    }
    return nullptr;
}

struct Selection {
    Backend backend = Backend::scalar;
    const Ops* ops = &scalar_ops();
};

Selection initial_selection() {
    Selection s;
    if (const char* env = std::getenv("GREENSTREAM_KERNEL")) {
        try {
            Backend want = parse_backend(env);
            if (want == Backend::scalar || cpu_has_avx2()) {
                s.backend = want;
                s.ops = ops_for(want);
                return s;
            }
        } catch (const std::invalid_argument&) {
            // Unknown name: fall through to auto selection.
        }
    }
    if (cpu_has_avx2()) {
        s.backend = Backend::avx2;
        s.ops = ops_for(Backend::avx2);
    }
    return s;
}

Selection& selection() {
    static Selection s = initial_selection();
    return s;
}

} // namespace

std::vector<Backend> available_backends() {
    std::vector<Backend> out;
    if (cpu_has_avx2()) out.push_back(Backend::avx2);
    out.push_back(Backend::scalar);
    return out;
}

const Ops& active_ops() { return *selection().ops; }

Backend active_backend() { return selection().backend; }

bool set_backend(Backend backend) {
    const Ops* ops = backend == Backend::avx2 && !cpu_has_avx2() ? nullptr : ops_for(backend);
    if (!ops) return false;
    selection().backend = backend;
    selection().ops = ops;
    return true;
}

const char* backend_name(Backend backend) {
    switch (backend) {
    case Backend::scalar:
        return "scalar";
    case Backend::avx2:
        return "avx2";
    }
    return "unknown";
}

Backend parse_backend(const std::string& name) {
    if (name == "scalar") return Backend::scalar;
    if (name == "avx2") return Backend::avx2;
    throw std::invalid_argument("unknown kernel backend: " + name);
}

} // namespace greenstream::kernels
