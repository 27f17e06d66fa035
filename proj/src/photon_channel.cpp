// Copyright 2026 The qkd3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qkd3/photon_channel.hpp"

#include <cassert>
#include <cstdlib>

namespace qkd3 {

std::optional<Polarization> polarization_from_degrees(int deg) {
    for (Polarization p : kAllPolarizations) {
        if (degrees(p) == deg) {
            return p;
        }
    }
    return std::nullopt;
}

std::string_view symbol(Polarization p) {
    switch (p) {
        case Polarization::Z0:
            return "0";
        case Polarization::D45:
            return "k";
        case Polarization::Z90:
            return "1";
        case Polarization::D135:
            return "l";
    }
    std::abort();
}

std::optional<Polarization> polarization_from_symbol(std::string_view s) {
    for (Polarization p : kAllPolarizations) {
        if (symbol(p) == s) {
            return p;
        }
    }
    return std::nullopt;
}

TransitionDistribution transition_distribution(Polarization photon, FilterSetting filter) {
    // Angles are multiples of 45 degrees, so the offset is 0, 45 or 90 (mod 180).
    const int delta = std::abs(degrees(photon) - degrees(filter.angle)) % 180;
    Rational pass;
    if (delta == 0) {
        pass = 1;
    } else if (delta == 90) {
        pass = 0;
    } else {
        pass = Rational(1, 2);
    }
    return {pass, 1 - pass};
}

MeasurementOutcome measure_with_variate(ChannelSymbol photon, FilterSetting filter, std::uint64_t variate) {
    if (!photon) {
        return MeasurementOutcome::erasure();
    }
    const double pass = to_double(transition_distribution(*photon, filter).detected);
    if (RandomSource::to_unit(variate) < pass) {
        return MeasurementOutcome::detected(filter.angle);
    }
    return MeasurementOutcome::erasure();
}

MeasurementOutcome measure(ChannelSymbol photon, FilterSetting filter, RandomSource& rng) {
    return measure_with_variate(photon, filter, rng.next_u64());
}

std::string_view to_string(ResendPolicy policy) {
    switch (policy) {
        case ResendPolicy::OrthogonalInference:
            return "orthogonal-inference";
        case ResendPolicy::SendNothing:
            return "send-nothing";
        case ResendPolicy::UniformRandom:
            return "uniform-random";
    }
    std::abort();
}

std::optional<ResendPolicy> resend_policy_from_string(std::string_view s) {
    for (ResendPolicy p : {ResendPolicy::OrthogonalInference, ResendPolicy::SendNothing, ResendPolicy::UniformRandom}) {
        if (to_string(p) == s) {
            return p;
        }
    }
    return std::nullopt;
}

ChannelSymbol collapse_and_resend(const MeasurementOutcome& outcome, FilterSetting filter, ResendPolicy policy,
                                  std::span<const Polarization> sender_alphabet, RandomSource& rng) {
    if (outcome.is_detected()) {
        return *outcome.detected_as();
    }
    switch (policy) {
        case ResendPolicy::OrthogonalInference:
            return orth(filter.angle);
        case ResendPolicy::SendNothing:
            return std::nullopt;
        case ResendPolicy::UniformRandom:
            assert(!sender_alphabet.empty());
            return sender_alphabet[rng.below(sender_alphabet.size())];
    }
    std::abort();
}

}  // namespace qkd3
