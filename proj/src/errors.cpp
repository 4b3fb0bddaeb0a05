#include "nlse/errors.hpp"

namespace nlse {

BlowUpError::BlowUpError(long step)
    : std::runtime_error("non-finite coefficient at step " + std::to_string(step)),
      step_(step) {}

}  // namespace nlse
