#pragma once

#include <functional>
#include <string>

namespace graphent {

// Non-fatal numerical observations (negativity of nonreciprocal states,
// concurrence cleanup, unconverged angular sums). Default sink is stderr.
using WarningSink = std::function<void(const std::string&)>;

void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

} // namespace graphent
