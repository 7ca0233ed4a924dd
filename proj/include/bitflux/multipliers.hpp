#pragma once

#include <cstdint>

#include "bitflux/encodings.hpp"

namespace bitflux {

/// AND (unipolar) / XNOR (bipolar) of an RB stream and a TB stream, cycle by cycle.
Bitstream htc_combine(const Bitstream& rb, const Bitstream& tb);

/// HTC product stream: x rendered as RB, w as TB. Result format is GB.
Bitstream htc_mul_stream(const BinaryWord& x, const BinaryWord& w);

struct CbscProduct {
    double value = 0.0;
    std::int64_t ones = 0;         // ones seen in the counted prefix
    std::int64_t cycles_used = 0;  // prefix length actually clocked
    std::int64_t counter = 0;      // up/down counter (bipolar) or up counter (unipolar)
};

/// Counting-based unipolar multiply: counts the ones in the first
/// ones_budget(w) cycles of rb(x).
CbscProduct cbsc_mul_unipolar(const BinaryWord& x, const BinaryWord& w);

/// Counting-based bipolar multiply in sign-magnitude form.
///
/// The magnitude |x| drives a bipolar RB of length 2^N; an up/down counter
/// runs for |raw(w)| cycles (+1 on '1', -1 on '0'), and the product is
/// sign(x)*sign(w) * counter / 2^(N-1). A magnitude of 2^(N-1) (operand -1.0)
/// yields an all-ones stream.
CbscProduct cbsc_mul_bipolar(const BinaryWord& x, const BinaryWord& w);

/// Dispatches on the common polarity of x and w.
CbscProduct cbsc_mul(const BinaryWord& x, const BinaryWord& w);

}  // namespace bitflux
