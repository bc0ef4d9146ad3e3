#include "pushlab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace pushlab::kern {

#if defined(PUSHLAB_HAVE_AVX2)
const Ops& avx2_ops();  // defined in kernels_avx2.cpp

static bool avx2_supported() {
#if defined(__GNUC__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
#endif

const Ops* kernel_by_name(std::string_view name) {
  if (name == "scalar") return &scalar_ops();
#if defined(PUSHLAB_HAVE_AVX2)
  if (name == "avx2" && avx2_supported()) return &avx2_ops();
#endif
  return nullptr;
}

const Ops& ops() {
  static const Ops* selected = [] {
    if (const char* env = std::getenv("PUSHLAB_KERNEL")) {
      if (const Ops* k = kernel_by_name(env)) return k;
    }
#if defined(PUSHLAB_HAVE_AVX2)
    if (avx2_supported()) return &avx2_ops();
#endif
    return &scalar_ops();
  }();
  return *selected;
}

}  // namespace pushlab::kern
