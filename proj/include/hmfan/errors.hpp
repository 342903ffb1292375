#pragma once

#include <stdexcept>
#include <string>

namespace hmfan {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define HMFAN_ERROR(Name)                                        \
  struct Name : Error {                                          \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

HMFAN_ERROR(InconsistentPairings);
HMFAN_ERROR(UnknownName);
HMFAN_ERROR(LatticeViolation);
HMFAN_ERROR(SingularFrame);
HMFAN_ERROR(NotAFace);
HMFAN_ERROR(FrameUnderdetermined);
HMFAN_ERROR(BoundExceeded);
HMFAN_ERROR(BoundaryWall);
HMFAN_ERROR(NotInMovableInterior);
HMFAN_ERROR(NonTermination);
HMFAN_ERROR(StarNotSaturated);
HMFAN_ERROR(UnsaturatedStore);
HMFAN_ERROR(IrrationalResidue);
HMFAN_ERROR(DegenerateInput);
HMFAN_ERROR(SliceDegenerate);
HMFAN_ERROR(ParseError);

#undef HMFAN_ERROR

}  // namespace hmfan
