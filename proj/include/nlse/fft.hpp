#pragma once

// Thin FFTW wrapper. Plans are cached per (length, direction, placement,
// alignment) and executed through the new-array interface, which FFTW
// guarantees to be thread-safe; only planning is serialized.

#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

namespace nlse::fft {

using cplx = std::complex<double>;

void* aligned_alloc_bytes(std::size_t bytes);
void aligned_free(void* p) noexcept;

/// Allocator returning SIMD-aligned storage so FFTW can use its aligned plans.
template <class T>
struct AlignedAllocator {
    using value_type = T;
    AlignedAllocator() noexcept = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
    T* allocate(std::size_t n) {
        void* p = aligned_alloc_bytes(n * sizeof(T));
        if (p == nullptr) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { aligned_free(p); }
    template <class U>
    bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using cvec = std::vector<cplx, AlignedAllocator<cplx>>;

/// out_k = sum_j in_j e^{-2 pi i jk/n} (no normalization). in and out may alias.
void forward(std::span<const cplx> in, std::span<cplx> out);
/// out_j = sum_k in_k e^{+2 pi i jk/n} (no normalization). in and out may alias.
void backward(std::span<const cplx> in, std::span<cplx> out);

}  // namespace nlse::fft
