#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "spinsim/rng.hpp"
#include "spinsim/spin.hpp"

namespace spinsim {

/// Largest number of cbits (and shared vector pairs) a round supports; 2s + 1 <= 64.
inline constexpr int kMaxCbits = 6;

/// +1 for x >= 0, -1 for x < 0. NaN is rejected.
inline int sgn(double x) {
    if (std::isnan(x)) throw std::domain_error("sgn: NaN argument");
#ifdef SPINSIM_FAULT_SGN_ZERO_NEGATIVE
    return x > 0.0 ? 1 : -1;
#else
    return x >= 0.0 ? 1 : -1;
#endif
}

/// Uniform point on S^2: z uniform on [-1, 1], azimuth uniform on [0, 2 pi).
UnitVector3 sample_unit_vector(CounterRng& rng);

/// Shared hidden variables (lambda_1..lambda_n, mu_1..mu_n).
class SharedRandomness {
  public:
    SharedRandomness() = default;
    SharedRandomness(std::span<const UnitVector3> lambdas, std::span<const UnitVector3> mus);

    static SharedRandomness sample(int n, CounterRng& rng);

    int size() const { return n_; }
    std::span<const UnitVector3> lambdas() const { return {lambdas_.data(), static_cast<std::size_t>(n_)}; }
    std::span<const UnitVector3> mus() const { return {mus_.data(), static_cast<std::size_t>(n_)}; }

  private:
    int n_ = 0;
    std::array<UnitVector3, kMaxCbits> lambdas_{};
    std::array<UnitVector3, kMaxCbits> mus_{};
};

/// The cbits c_1..c_n Alice transmits, each +1 or -1.
class MessageBits {
  public:
    MessageBits() = default;
    explicit MessageBits(std::span<const int> bits);

    int size() const { return n_; }
    int operator[](int k) const { return bits_[k]; }
    std::span<const std::int8_t> bits() const { return {bits_.data(), static_cast<std::size_t>(n_)}; }

    void push_back(int bit);

  private:
    int n_ = 0;
    std::array<std::int8_t, kMaxCbits> bits_{};
};

/// 2 alpha = -sum_k 2^(n-k) sgn(a . lambda_k).
int alice_output(const UnitVector3& a, const SharedRandomness& randomness);

/// c_k = sgn(a . lambda_k) sgn(a . mu_k).
MessageBits alice_messages(const UnitVector3& a, const SharedRandomness& randomness);

/// Bob's bit g_k = sgn(b . lambda_k + c_k (b . mu_k)), i.e. sgn(b . (lambda_k + c_k mu_k)).
int bob_bit(const UnitVector3& b, const UnitVector3& lambda, const UnitVector3& mu, int c);

/// 2 beta = sum_k 2^(n-k) g_k.
int bob_output(const UnitVector3& b, const SharedRandomness& randomness, const MessageBits& messages);

/// One complete execution of the protocol.
struct ProtocolRound {
    TwoSpin two_s;
    UnitVector3 a;
    UnitVector3 b;
    SharedRandomness randomness;
    MessageBits messages;
    int alpha_doubled = 0;
    int beta_doubled = 0;
    int bits_sent = 0;
};

/// Throws std::domain_error unless 2s + 1 is a power of two with n <= kMaxCbits.
int require_protocol_eligible(TwoSpin two_s);

/// Draws 2n fresh shared vectors from rng and plays both parties' programs.
ProtocolRound run_round(TwoSpin two_s, const UnitVector3& a, const UnitVector3& b, CounterRng& rng);

}  // namespace spinsim
