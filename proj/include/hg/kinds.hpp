#pragma once

namespace hg {

enum class ProcessKind { Matching, Independent };

// Two readings of the independent-process edge-class drift; see rates.hpp.
enum class RateMode { PaperLiteral, ConservationCorrected };

inline const char* to_string(ProcessKind k) {
    return k == ProcessKind::Matching ? "matching" : "independent";
}
inline const char* to_string(RateMode m) {
    return m == RateMode::PaperLiteral ? "paper-literal" : "conservation-corrected";
}

} // namespace hg
