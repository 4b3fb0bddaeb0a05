#include "nlse/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace nlse::fft {

void* aligned_alloc_bytes(std::size_t bytes) { return fftw_malloc(bytes); }
void aligned_free(void* p) noexcept { fftw_free(p); }

namespace {

using PlanKey = std::tuple<std::size_t, int, bool, bool>;

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int sign, bool in_place, bool aligned) {
        const PlanKey key{n, sign, in_place, aligned};
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        // Scratch buffers only fix the plan's shape; FFTW_ESTIMATE never touches them.
        auto* a = fftw_alloc_complex(n);
        auto* b = in_place ? a : fftw_alloc_complex(n);
        unsigned flags = FFTW_ESTIMATE;
        if (!aligned) flags |= FFTW_UNALIGNED;
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), a, b, sign, flags);
        if (b != a) fftw_free(b);
        fftw_free(a);
        if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

void execute(std::span<const cplx> in, std::span<cplx> out, int sign) {
    if (in.size() != out.size()) throw std::invalid_argument("fft: length mismatch");
    if (in.empty()) return;
    // FFTW's interface is not const-correct; out-of-place c2c plans leave the input intact.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    const bool in_place = src == dst;
    const bool aligned = fftw_alignment_of(reinterpret_cast<double*>(src)) == 0 &&
                         fftw_alignment_of(reinterpret_cast<double*>(dst)) == 0;
    fftw_plan plan = cache().get(in.size(), sign, in_place, aligned);
    fftw_execute_dft(plan, src, dst);
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) { execute(in, out, FFTW_FORWARD); }
void backward(std::span<const cplx> in, std::span<cplx> out) { execute(in, out, FFTW_BACKWARD); }

}  // namespace nlse::fft
