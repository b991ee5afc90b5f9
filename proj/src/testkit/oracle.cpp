#include "frer/testkit/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace frer::testkit {

OracleState::OracleState(std::size_t history_length) : history_(history_length) {
    if (history_length == 0) {
        throw std::invalid_argument("oracle history length must be positive");
    }
}

std::string OracleState::describe() const {
    std::ostringstream os;
    os << "fresh=" << fresh_ << " max_accepted=" << max_accepted_ << " H=" << history_ << " window=[";
    bool first = true;
    const auto h = static_cast<std::int64_t>(history_);
    for (auto it = accepted_.lower_bound(max_accepted_ - h + 1); it != accepted_.end(); ++it) {
        os << (first ? "" : ",") << *it;
        first = false;
    }
    os << "]";
    return os.str();
}

Decision oracle_recover(OracleState& state, std::int64_t abs_seq) {
    const auto h = static_cast<std::int64_t>(state.history_);
    if (state.fresh_) {
        state.fresh_ = false;
        state.max_accepted_ = abs_seq;
        state.accepted_ = {abs_seq};
        return Decision::pass;
    }
    if (abs_seq <= state.max_accepted_ - h || abs_seq >= state.max_accepted_ + h) {
        return Decision::discard_rogue;
    }
    if (state.accepted_.count(abs_seq) != 0) {
        return Decision::discard_duplicate;
    }
    state.accepted_.insert(abs_seq);
    if (abs_seq > state.max_accepted_) {
        state.max_accepted_ = abs_seq;
        // anything at or below max - H can never be consulted again
        state.accepted_.erase(state.accepted_.begin(), state.accepted_.lower_bound(state.max_accepted_ - h + 1));
    }
    return Decision::pass;
}

std::vector<SequencePoint> generate_stream(const PerturbedStream& spec) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> displacement(0, spec.reorder_window);

    struct Keyed {
        std::size_t key;
        std::size_t order;
        std::int64_t abs;
    };
    std::vector<Keyed> items;
    items.reserve(spec.length + spec.length / 4);

    std::size_t lost_run = 0;
    for (std::size_t i = 0; i < spec.length; ++i) {
        const std::int64_t abs = spec.wrap_offset + static_cast<std::int64_t>(i);
        if (spec.loss > 0.0 && lost_run < spec.max_loss_run && unit(rng) < spec.loss) {
            ++lost_run;
            continue;
        }
        lost_run = 0;
        const int copies = (spec.duplication > 0.0 && unit(rng) < spec.duplication) ? 2 : 1;
        for (int c = 0; c < copies; ++c) {
            const std::size_t shift = spec.reorder_window > 0 ? displacement(rng) : 0;
            items.push_back(Keyed{i + shift, items.size(), abs});
        }
    }
    std::sort(items.begin(), items.end(),
              [](const Keyed& a, const Keyed& b) { return a.key != b.key ? a.key < b.key : a.order < b.order; });

    std::vector<SequencePoint> out;
    out.reserve(items.size());
    for (const auto& item : items) {
        const auto seq = static_cast<std::uint16_t>(((item.abs % 65536) + 65536) % 65536);
        out.push_back(SequencePoint{seq, item.abs});
    }
    return out;
}

RecoveryUnderTest wrap(SequenceRecovery& recovery) {
    return RecoveryUnderTest{
        [&recovery](std::uint16_t seq) { return recovery.recover(seq, Nanoseconds::zero()); },
        [&recovery] { return recovery.describe(); },
    };
}

std::string EquivalenceReport::summary() const {
    std::ostringstream os;
    if (ok()) {
        os << "equivalent over " << decisions << " decisions";
        return os.str();
    }
    const auto& d = *divergence;
    os << "divergence at step " << d.index << " (seq=" << d.point.seq << " abs=" << d.point.abs
       << "): implementation=" << to_string(d.implementation) << " oracle=" << to_string(d.oracle)
       << "\n  implementation state: " << d.implementation_state << "\n  oracle state: " << d.oracle_state;
    return os.str();
}

EquivalenceReport check_equivalence(const RecoveryUnderTest& impl, OracleState& oracle,
                                    const std::vector<SequencePoint>& stream) {
    EquivalenceReport report;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        const auto& p = stream[i];
        const Decision got = impl.recover(p.seq);
        const Decision want = oracle_recover(oracle, p.abs);
        ++report.decisions;
        if (got != want) {
            report.divergence = Divergence{i, p, got, want, impl.describe ? impl.describe() : std::string{},
                                           oracle.describe()};
            break;
        }
    }
    return report;
}

}  // namespace frer::testkit
