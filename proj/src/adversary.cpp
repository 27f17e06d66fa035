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

#include "qkd3/adversary.hpp"

#include <stdexcept>

namespace qkd3 {

std::string to_string(const EveFilterChoice& choice) {
    if (!choice.fixed) {
        return "uniform";
    }
    return std::to_string(degrees(*choice.fixed));
}

void validate(const AttackStrategy& attack) {
    if (const auto* ir = std::get_if<InterceptResend>(&attack)) {
        if (!(ir->fraction >= 0.0 && ir->fraction <= 1.0)) {
            throw std::invalid_argument("intercept fraction must lie in [0, 1]");
        }
    }
}

bool is_passive(const AttackStrategy& attack) {
    return std::holds_alternative<NoAttack>(attack) || std::holds_alternative<PassiveClassical>(attack);
}

std::vector<Polarization> consistent_senders(FilterSetting filter, const MeasurementOutcome& outcome,
                                             std::span<const Polarization> sender_alphabet) {
    std::vector<Polarization> out;
    for (Polarization p : sender_alphabet) {
        const auto t = transition_distribution(p, filter);
        if ((outcome.is_detected() ? t.detected : t.erasure) != 0) {
            out.push_back(p);
        }
    }
    return out;
}

InterceptResult intercept_resend(Polarization photon, const InterceptResend& strategy, const ProtocolAlphabet& protocol,
                                 RandomSource& rng, std::size_t position) {
    InterceptResult result{photon, EveRecord{.position = position}};
    if (!(rng.uniform() < strategy.fraction)) {
        return result;
    }
    const FilterSetting filter = strategy.filter_choice.fixed
                                     ? FilterSetting{*strategy.filter_choice.fixed}
                                     : protocol.filters[rng.below(protocol.filters.size())];
    const MeasurementOutcome outcome = measure(photon, filter, rng);
    result.resent = collapse_and_resend(outcome, filter, strategy.resend, protocol.sender, rng);
    result.record.filter = filter;
    result.record.outcome = outcome;
    if (auto senders = consistent_senders(filter, outcome, protocol.sender); senders.size() == 1) {
        result.record.known_bit = senders.front();
    }
    return result;
}

Eavesdropper::Eavesdropper(AttackStrategy attack, ProtocolAlphabet protocol, RandomSource rng)
    : attack_(std::move(attack)), protocol_(protocol), rng_(rng) {
    validate(attack_);
    if (const auto* ir = std::get_if<InterceptResend>(&attack_)) {
        active_ = *ir;
    } else if (const auto* stuck = std::get_if<StuckFilter>(&attack_)) {
        active_ = InterceptResend{EveFilterChoice{stuck->angle}, stuck->resend, 1.0};
    }
}

ChannelSymbol Eavesdropper::transmit(Polarization photon) {
    const std::size_t position = position_++;
    if (!active_) {
        return photon;
    }
    auto [resent, record] = intercept_resend(photon, *active_, protocol_, rng_, position);
    records_.push_back(record);
    return resent;
}

std::vector<EveRecord> passive_infer(const Transcript& transcript) {
    const auto* filters = transcript.filters();
    const auto* confirmations = transcript.confirmations();
    if (filters == nullptr || confirmations == nullptr) {
        throw std::invalid_argument("transcript lacks filter or confirmation announcement");
    }
    if (filters->filters.size() != confirmations->correct.size()) {
        throw std::invalid_argument("filter and confirmation announcements differ in length");
    }
    std::vector<EveRecord> out(filters->filters.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].position = i;
        out[i].source = KnowledgeSource::Transcript;
        // A confirmed k setting is only ever an exact match.
        if (confirmations->correct[i] && filters->filters[i].angle == Polarization::D45) {
            out[i].known_bit = Polarization::D45;
        }
    }
    return out;
}

StuckFilterReport stuck_filter_stats(std::size_t n, Polarization angle, RandomSource& rng) {
    if (angle != Polarization::Z0 && angle != Polarization::Z90) {
        throw std::invalid_argument("stuck filter angle must be 0 or 90 degrees");
    }
    StuckFilterReport report{.n = n, .angle = angle};
    RandomSource alice = rng.child(0);
    RandomSource eve = rng.child(1);
    const FilterSetting filter{angle};
    for (std::size_t i = 0; i < n; ++i) {
        const Polarization sent = kThreeStateAlphabet[alice.below(kThreeStateAlphabet.size())];
        const MeasurementOutcome outcome = measure(sent, filter, eve);
        ++(outcome.is_detected() ? report.detected : report.erased);
        if (consistent_senders(filter, outcome, kThreeStateAlphabet).size() == 1) {
            ++report.uniquely_determined;
        }
    }
    return report;
}

}  // namespace qkd3
