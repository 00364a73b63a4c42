#include "fracell/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace fracell {

namespace {

// The FFTW planner is not reentrant; execution of a finished plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  Plan(std::vector<cplx>& data, const std::vector<int>& extents, FftSign sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    const int fftw_sign = sign == FftSign::kPositive ? FFTW_BACKWARD : FFTW_FORWARD;
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft(static_cast<int>(extents.size()), extents.data(), buf, buf, fftw_sign,
                          FFTW_ESTIMATE);
  }
  ~Plan() {
    if (plan_ == nullptr) return;
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void execute() const { fftw_execute(plan_); }
  bool valid() const { return plan_ != nullptr; }

 private:
  fftw_plan plan_ = nullptr;
};

}  // namespace

void dft_inplace(std::vector<cplx>& data, const std::vector<int>& extents, FftSign sign) {
  if (extents.empty() || extents.size() > 3) {
    fail(ErrorCode::kInvalidArgument, "dft: expected 1 to 3 axes");
  }
  std::size_t total = 1;
  for (int e : extents) {
    if (e < 1) fail(ErrorCode::kInvalidArgument, "dft: empty axis");
    total *= static_cast<std::size_t>(e);
  }
  if (total != data.size()) fail(ErrorCode::kDimensionMismatch, "dft: size does not match extents");
  Plan plan(data, extents, sign);
  if (!plan.valid()) fail(ErrorCode::kInvalidArgument, "dft: planner failed");
  plan.execute();
}

}  // namespace fracell
