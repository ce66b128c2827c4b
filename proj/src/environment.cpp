#include "graphent/environment.hpp"

#include "graphent/errors.hpp"
#include "graphent/units.hpp"

#include <cmath>

namespace graphent {

Environment Environment::homogeneous(double eps_r)
{
    Environment env{eps_r, eps_r, std::nullopt};
    env.validate();
    return env;
}

Environment Environment::graphene(double eps_r1, double eps_r2, const GrapheneParams& sheet)
{
    Environment env{eps_r1, eps_r2, sheet};
    env.validate();
    return env;
}

void Environment::validate() const
{
    if (!(eps_r1 >= 1.0) || !(eps_r2 >= 1.0))
        throw InvalidInput("cladding permittivities must be real and >= 1");
    if (sheet)
        sheet->validate();
}

const GrapheneParams& Environment::sheet_params() const
{
    if (!sheet)
        throw InvalidInput("operation requires a graphene sheet but the environment has none");
    return *sheet;
}

double Environment::k1(double omega) const { return omega / units::c * std::sqrt(eps_r1); }

double Environment::k2(double omega) const { return omega / units::c * std::sqrt(eps_r2); }

cplx decaying_sqrt(cplx arg)
{
    cplx p = std::sqrt(arg);
    if (p.real() < 0.0)
        p = -p;
    if (p.real() == 0.0 && p.imag() > 0.0)
        p = -p;
    return p;
}

} // namespace graphent
