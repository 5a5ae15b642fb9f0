#include "spinsim/protocol.hpp"

#include <numbers>
#include <string>

namespace spinsim {

UnitVector3 sample_unit_vector(CounterRng& rng) {
    const double z = 2.0 * rng.uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    return make_unit_unchecked(rho * std::cos(phi), rho * std::sin(phi), z);
}

SharedRandomness::SharedRandomness(std::span<const UnitVector3> lambdas, std::span<const UnitVector3> mus) {
    if (lambdas.size() != mus.size()) throw std::invalid_argument("lambda and mu counts differ");
    if (lambdas.empty() || lambdas.size() > static_cast<std::size_t>(kMaxCbits)) {
        throw std::invalid_argument("shared randomness must hold between 1 and " + std::to_string(kMaxCbits) +
                                    " vector pairs");
    }
    n_ = static_cast<int>(lambdas.size());
    for (int k = 0; k < n_; ++k) {
        lambdas_[k] = lambdas[k];
        mus_[k] = mus[k];
    }
}

SharedRandomness SharedRandomness::sample(int n, CounterRng& rng) {
    if (n < 1 || n > kMaxCbits) throw std::invalid_argument("unsupported number of shared vector pairs");
    SharedRandomness out;
    out.n_ = n;
    for (int k = 0; k < n; ++k) {
        out.lambdas_[k] = sample_unit_vector(rng);
        out.mus_[k] = sample_unit_vector(rng);
    }
    return out;
}

MessageBits::MessageBits(std::span<const int> bits) {
    for (int bit : bits) push_back(bit);
}

void MessageBits::push_back(int bit) {
    if (bit != 1 && bit != -1) throw std::invalid_argument("message bits must be +1 or -1");
    if (n_ == kMaxCbits) throw std::length_error("too many message bits");
    bits_[n_++] = static_cast<std::int8_t>(bit);
}

int alice_output(const UnitVector3& a, const SharedRandomness& randomness) {
    const int n = randomness.size();
    int twice_alpha = 0;
    for (int k = 0; k < n; ++k) twice_alpha -= (1 << (n - 1 - k)) * sgn(a.dot(randomness.lambdas()[k]));
    return twice_alpha;
}

MessageBits alice_messages(const UnitVector3& a, const SharedRandomness& randomness) {
    MessageBits out;
    for (int k = 0; k < randomness.size(); ++k) {
        out.push_back(sgn(a.dot(randomness.lambdas()[k])) * sgn(a.dot(randomness.mus()[k])));
    }
    return out;
}

int bob_bit(const UnitVector3& b, const UnitVector3& lambda, const UnitVector3& mu, int c) {
    // Distributing the dot product keeps sgn(a.(lambda + c mu)) == sgn(a.lambda) exact in floating
    // point when b == a.
    return sgn(b.dot(lambda) + c * b.dot(mu));
}

int bob_output(const UnitVector3& b, const SharedRandomness& randomness, const MessageBits& messages) {
    const int n = randomness.size();
    if (messages.size() != n) throw std::invalid_argument("message length does not match shared randomness");
    int twice_beta = 0;
    for (int k = 0; k < n; ++k) {
        twice_beta += (1 << (n - 1 - k)) * bob_bit(b, randomness.lambdas()[k], randomness.mus()[k], messages[k]);
    }
    return twice_beta;
}

int require_protocol_eligible(TwoSpin two_s) {
    const int n = two_s.cbits();
    if (n > kMaxCbits) {
        throw std::domain_error("protocol supports at most " + std::to_string(kMaxCbits) + " cbits; spin " +
                                two_s.to_string() + " needs " + std::to_string(n));
    }
    return n;
}

ProtocolRound run_round(TwoSpin two_s, const UnitVector3& a, const UnitVector3& b, CounterRng& rng) {
    const int n = require_protocol_eligible(two_s);
    ProtocolRound round{two_s, a, b, SharedRandomness::sample(n, rng), {}, 0, 0, 0};
    round.alpha_doubled = alice_output(a, round.randomness);
    round.messages = alice_messages(a, round.randomness);
    round.bits_sent = round.messages.size();
    round.beta_doubled = bob_output(b, round.randomness, round.messages);
    return round;
}

}  // namespace spinsim
