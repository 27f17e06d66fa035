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

#include "qkd3/three_state.hpp"

#include <cmath>
#include <stdexcept>

namespace qkd3 {

bool is_correct_setting(Polarization sent, FilterSetting filter) {
    if (sent == Polarization::D45) {
        return filter.angle == Polarization::D45;
    }
    return basis_of(sent) == Basis::Rectilinear && basis_of(filter.angle) == Basis::Rectilinear;
}

Confirmation confirm(std::span<const Polarization> sent, std::span<const FilterSetting> filters) {
    if (sent.size() != filters.size()) {
        throw std::invalid_argument("sent and filter lists differ in length");
    }
    Confirmation c;
    c.correct.resize(sent.size());
    for (std::size_t i = 0; i < sent.size(); ++i) {
        c.correct[i] = is_correct_setting(sent[i], filters[i]);
    }
    return c;
}

Polarization infer_key_bit(FilterSetting filter, const MeasurementOutcome& outcome) {
    if (filter.angle != Polarization::Z0 && filter.angle != Polarization::Z90) {
        throw std::invalid_argument("key slots use Z0 or Z90 filters");
    }
    return outcome.is_detected() ? filter.angle : orth(filter.angle);
}

TamperReport authenticate(std::span<const MeasurementOutcome> auth_outcomes) {
    TamperReport report;
    report.auth_checked = auth_outcomes.size();
    for (const auto& o : auth_outcomes) {
        if (o.is_erasure()) {
            ++report.auth_failures;
        }
    }
    report.tamper_detected = report.auth_failures > 0;
    report.model_certification = 1.0 - std::pow(3.0, -static_cast<double>(report.auth_checked));
    return report;
}

Rational three_state_key_count(std::int64_t n) {
    if (n < 0) {
        throw std::invalid_argument("photon count must be non-negative");
    }
    return Rational(4 * n, 9);
}

double three_state_certification(double n) { return 1.0 - std::pow(3.0, -n / 9.0); }

ThreeStateRun three_state_run(std::size_t n, RandomSource& rng, const AttackStrategy& attack,
                              const ThreeStateOptions& options) {
    if (n < 1) {
        throw std::invalid_argument("photon count must be at least 1");
    }
    RandomSource alice_rng = rng.child(0);
    RandomSource filter_rng = rng.child(1);
    RandomSource detector_rng = rng.child(2);
    Eavesdropper eve(attack, kThreeStateProtocol, rng.child(3));

    ThreeStateRun run;
    run.alice.sent.reserve(n);
    run.bob.filters.reserve(n);
    run.bob.outcomes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Polarization sent = kThreeStateAlphabet[alice_rng.below(kThreeStateAlphabet.size())];
        const FilterSetting filter = kThreeStateFilters[filter_rng.below(kThreeStateFilters.size())];
        const ChannelSymbol arriving = eve.transmit(sent);
        run.alice.sent.push_back(sent);
        run.bob.filters.push_back(filter);
        run.bob.outcomes.push_back(measure(arriving, filter, detector_rng));
    }
    run.eve_records = eve.records();

    run.transcript.append(Party::Bob, FilterAnnouncement{run.bob.filters});
    run.confirmation = confirm(run.alice.sent, run.bob.filters);
    run.transcript.append(Party::Alice, ConfirmationAnnouncement{run.confirmation.correct});

    std::vector<MeasurementOutcome> auth_outcomes;
    for (std::size_t i = 0; i < n; ++i) {
        if (!run.confirmation.correct[i]) {
            continue;
        }
        const FilterSetting filter = run.bob.filters[i];
        if (filter.angle == Polarization::D45) {
            run.key.auth_positions.push_back(i);
            auth_outcomes.push_back(run.bob.outcomes[i]);
        } else {
            run.key.key_positions.push_back(i);
            run.key.key_bits.push_back(bit_map(infer_key_bit(filter, run.bob.outcomes[i])));
            run.key.alice_key_bits.push_back(bit_map(run.alice.sent[i]));
        }
    }
    run.tamper = authenticate(auth_outcomes);
    run.key_released = !(options.abort_on_tamper && run.tamper.tamper_detected);
    return run;
}

}  // namespace qkd3
