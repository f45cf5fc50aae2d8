#include "tsvolterra/kernels.hpp"

namespace tsv::kernels {

namespace {

const Ops kScalarOps{scalar::weighted_dot, scalar::dot, scalar::sup_abs_diff, "scalar"};

#if defined(__x86_64__) || defined(_M_X64)
const Ops kAvx2Ops{avx2::weighted_dot, avx2::dot, avx2::sup_abs_diff, "avx2"};
#endif

const Ops& pick() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return kAvx2Ops;
    }
#endif
    return kScalarOps;
}

} // namespace

const Ops& active() {
    static const Ops& ops = pick();
    return ops;
}

const Ops& scalar_ops() { return kScalarOps; }

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

} // namespace tsv::kernels
