#include "hdc/oracle.hpp"

#include <utility>
#include <vector>

#include "hdc/errors.hpp"
#include "hdc/rng.hpp"

namespace hdc {

namespace {

int sign_of(double t) noexcept { return t > 0.0 ? 1 : -1; }

// Fallback session: materializes the query vector and goes through query(),
// so any SignOracle subclass gets correct plane semantics for free.
class GenericPlaneSession final : public SignOracle::PlaneSession {
 public:
  GenericPlaneSession(SignOracle& oracle, UnitVector e1, UnitVector e2)
      : oracle_(oracle), e1_(std::move(e1)), e2_(std::move(e2)) {}

  int query(double c1, double c2) override {
    return oracle_.query(combine_unit(c1, e1_, c2, e2_));
  }

 private:
  SignOracle& oracle_;
  UnitVector e1_, e2_;
};

class TruthOracle final : public SignOracle {
 public:
  explicit TruthOracle(UnitVector target) : target_(std::move(target)) {}

  int query(const UnitVector& x) override {
    ++count_;
    return sign_of(dot(target_, x));
  }

  std::unique_ptr<PlaneSession> open_plane(const UnitVector& e1, const UnitVector& e2) override {
    // <h, c1*e1 + c2*e2> = c1*<h, e1> + c2*<h, e2>; cache the two projections
    class Session final : public PlaneSession {
     public:
      Session(TruthOracle& o, double s1, double s2) : o_(o), s1_(s1), s2_(s2) {}
      int query(double c1, double c2) override {
        ++o_.count_;
        return sign_of(c1 * s1_ + c2 * s2_);
      }

     private:
      TruthOracle& o_;
      double s1_, s2_;
    };
    return std::make_unique<Session>(*this, dot(target_, e1), dot(target_, e2));
  }

  std::uint64_t queries_used() const noexcept override { return count_; }

 private:
  UnitVector target_;
  std::uint64_t count_ = 0;
};

class NoisyOracle final : public SignOracle {
 public:
  NoisyOracle(std::unique_ptr<SignOracle> inner, double rho, std::uint64_t seed)
      : inner_(std::move(inner)), rho_(rho), rng_(seed) {
    if (!inner_) throw parameter_error("noisy oracle: inner oracle is null");
    if (!(rho >= 0.0 && rho < 0.5))
      throw parameter_error("noisy oracle: rho must be in [0, 1/2)");
  }

  int query(const UnitVector& x) override { return flip(inner_->query(x)); }

  std::unique_ptr<PlaneSession> open_plane(const UnitVector& e1, const UnitVector& e2) override {
    class Session final : public PlaneSession {
     public:
      Session(NoisyOracle& o, std::unique_ptr<PlaneSession> inner)
          : o_(o), inner_(std::move(inner)) {}
      int query(double c1, double c2) override { return o_.flip(inner_->query(c1, c2)); }

     private:
      NoisyOracle& o_;
      std::unique_ptr<PlaneSession> inner_;
    };
    return std::make_unique<Session>(*this, inner_->open_plane(e1, e2));
  }

  std::uint64_t queries_used() const noexcept override { return inner_->queries_used(); }

 private:
  int flip(int s) { return rng_.next_double() < rho_ ? -s : s; }

  std::unique_ptr<SignOracle> inner_;
  double rho_;
  SplitMix64 rng_;
};

class MajorityOracle final : public SignOracle {
 public:
  MajorityOracle(std::unique_ptr<SignOracle> inner, long repetitions)
      : inner_(std::move(inner)), reps_(repetitions) {
    if (!inner_) throw parameter_error("majority oracle: inner oracle is null");
    if (reps_ < 1 || reps_ % 2 == 0)
      throw parameter_error("majority oracle: repetitions must be odd and >= 1");
  }

  int query(const UnitVector& x) override {
    long tally = 0;
    for (long i = 0; i < reps_; ++i) tally += inner_->query(x);
    return tally > 0 ? 1 : -1;
  }

  std::unique_ptr<PlaneSession> open_plane(const UnitVector& e1, const UnitVector& e2) override {
    class Session final : public PlaneSession {
     public:
      Session(long reps, std::unique_ptr<PlaneSession> inner)
          : reps_(reps), inner_(std::move(inner)) {}
      int query(double c1, double c2) override {
        long tally = 0;
        for (long i = 0; i < reps_; ++i) tally += inner_->query(c1, c2);
        return tally > 0 ? 1 : -1;
      }

     private:
      long reps_;
      std::unique_ptr<PlaneSession> inner_;
    };
    return std::make_unique<Session>(reps_, inner_->open_plane(e1, e2));
  }

  std::uint64_t queries_used() const noexcept override { return inner_->queries_used(); }

 private:
  std::unique_ptr<SignOracle> inner_;
  long reps_;
};

}  // namespace

std::unique_ptr<SignOracle::PlaneSession> SignOracle::open_plane(const UnitVector& e1,
                                                                 const UnitVector& e2) {
  if (e1.dim() != e2.dim()) throw parameter_error("open_plane: dimension mismatch");
  return std::make_unique<GenericPlaneSession>(*this, e1, e2);
}

std::unique_ptr<SignOracle> make_truth_oracle(UnitVector target) {
  return std::make_unique<TruthOracle>(std::move(target));
}

std::unique_ptr<SignOracle> make_noisy_oracle(std::unique_ptr<SignOracle> inner, double rho,
                                              std::uint64_t seed) {
  return std::make_unique<NoisyOracle>(std::move(inner), rho, seed);
}

std::unique_ptr<SignOracle> make_majority_oracle(std::unique_ptr<SignOracle> inner,
                                                 long repetitions) {
  return std::make_unique<MajorityOracle>(std::move(inner), repetitions);
}

}  // namespace hdc
