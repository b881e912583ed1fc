#include "noisebench/simulate.hpp"

#include <algorithm>

#include "noisebench/butterworth.hpp"
#include "noisebench/errors.hpp"
#include "noisebench/impulsive.hpp"
#include "noisebench/power_law.hpp"
#include "noisebench/shot_noise.hpp"

namespace noisebench {

namespace {

class BandLimitedSampler final : public Sampler {
 public:
  BandLimitedSampler(const BandLimited& spec, std::size_t len)
      : sos_(butterworth_bandpass(spec.order, spec.f_lo, spec.f_hi)), len_(len) {
    require(len > 3 * std::size_t(sos_.order()), ErrorCategory::InvalidParameter,
            "series length must exceed 3 * filter order");
  }
  void sample(RngStream& stream, std::span<double> out) const override {
    std::vector<double> white(len_);
    for (double& v : white) v = stream.std_normal();
    std::vector<double> y = zero_phase_filter(sos_, white);
    std::copy(y.begin(), y.end(), out.begin());
  }

 private:
  SosCascade sos_;
  std::size_t len_;
};

class FgnSeriesSampler final : public Sampler {
 public:
  FgnSeriesSampler(const Fgn& spec, std::size_t len) : inner_(spec.H, spec.sigma_y2, len) {}
  void sample(RngStream& stream, std::span<double> out) const override {
    inner_.sample(stream, out);
  }

 private:
  FgnSampler inner_;
};

class FbmSeriesSampler final : public Sampler {
 public:
  FbmSeriesSampler(const Fbm& spec, std::size_t len)
      : inner_(len > 1 ? std::make_unique<FgnSampler>(spec.H, spec.sigma_y2, len - 1)
                       : nullptr),
        len_(len) {
    require(len >= 1, ErrorCategory::InvalidParameter, "series length must be >= 1");
  }
  void sample(RngStream& stream, std::span<double> out) const override {
    out[0] = 0.0;
    if (len_ == 1) return;
    std::vector<double> incr(len_ - 1);
    inner_->sample(stream, incr);
    double acc = 0.0;
    for (std::size_t n = 1; n < len_; ++n) {
      acc += incr[n - 1];
      out[n] = acc;
    }
  }

 private:
  std::unique_ptr<FgnSampler> inner_;
  std::size_t len_;
};

class FdwnSeriesSampler final : public Sampler {
 public:
  FdwnSeriesSampler(const Fdwn& spec, std::size_t len) : inner_(spec.d, spec.sigma_eps2, len) {}
  void sample(RngStream& stream, std::span<double> out) const override {
    inner_.sample(stream, out);
  }

 private:
  FdwnSampler inner_;
};

class ShotSampler final : public Sampler {
 public:
  ShotSampler(const Shot& spec, std::size_t len) : spec_(spec), len_(len) {}
  void sample(RngStream& stream, std::span<double> out) const override {
    std::vector<double> y = simulate_shot(spec_, len_, stream);
    std::copy(y.begin(), y.end(), out.begin());
  }

 private:
  Shot spec_;
  std::size_t len_;
};

class BgSampler final : public Sampler {
 public:
  BgSampler(const Bg& spec, std::size_t len) : spec_(spec), len_(len) {}
  void sample(RngStream& stream, std::span<double> out) const override {
    std::vector<double> y = simulate_bg(spec_, len_, stream);
    std::copy(y.begin(), y.end(), out.begin());
  }

 private:
  Bg spec_;
  std::size_t len_;
};

class SasSampler final : public Sampler {
 public:
  SasSampler(const Sas& spec, std::size_t len) : spec_(spec), len_(len) {}
  void sample(RngStream& stream, std::span<double> out) const override {
    std::vector<double> y = simulate_sas_series(spec_, len_, stream);
    std::copy(y.begin(), y.end(), out.begin());
  }

 private:
  Sas spec_;
  std::size_t len_;
};

}  // namespace

std::unique_ptr<Sampler> make_sampler(const NoiseSpec& spec, std::size_t len) {
  validate(spec);
  return std::visit(
      [len](const auto& s) -> std::unique_ptr<Sampler> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BandLimited>)
          return std::make_unique<BandLimitedSampler>(s, len);
        else if constexpr (std::is_same_v<T, Fdwn>)
          return std::make_unique<FdwnSeriesSampler>(s, len);
        else if constexpr (std::is_same_v<T, Fgn>)
          return std::make_unique<FgnSeriesSampler>(s, len);
        else if constexpr (std::is_same_v<T, Fbm>)
          return std::make_unique<FbmSeriesSampler>(s, len);
        else if constexpr (std::is_same_v<T, Shot>)
          return std::make_unique<ShotSampler>(s, len);
        else if constexpr (std::is_same_v<T, Bg>)
          return std::make_unique<BgSampler>(s, len);
        else
          return std::make_unique<SasSampler>(s, len);
      },
      spec);
}

std::vector<double> simulate(const NoiseSpec& spec, std::size_t len, RngStream& stream) {
  auto sampler = make_sampler(spec, len);
  std::vector<double> out(len);
  sampler->sample(stream, out);
  return out;
}

TimeSeriesDataset simulate_dataset(const NoiseSpec& spec, std::size_t n_series,
                                   std::size_t len, std::uint64_t master_seed, Exec exec) {
  auto sampler = make_sampler(spec, len);
  TimeSeriesDataset ds(n_series, len);
  for_each_index(n_series, exec, [&](std::size_t i) {
    RngStream stream(master_seed, i);
    sampler->sample(stream, ds.series(i));
  });
  return ds;
}

}  // namespace noisebench
