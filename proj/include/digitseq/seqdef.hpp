#pragma once

#include <iosfwd>
#include <string>

#include "digitseq/sequences.hpp"

namespace digitseq {

/// Parse a sequence-definition file.
///
/// Format: a [sequence] section with q, kind and the kind's parameters,
/// plus [g] / [initial] / [poly] sections where the kind requires them.
/// Kinds: table, rudin-shapiro, beta-delta, b-d, block-additive,
/// block-additive-finite, occurrence, digit-polynomial.
/// Every diagnostic carries the file name and line number.
SequenceDef parse_seqdef(const std::string& path);
SequenceDef parse_seqdef_text(std::istream& in, const std::string& name);

} // namespace digitseq
