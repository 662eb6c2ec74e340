#include "doctest.h"

#include "poisswell/errors.hpp"
#include "poisswell/state.hpp"

#include <functional>

using namespace poisswell;

namespace {

std::string failing_key(std::function<void(SimParams&)> const& edit)
{
    SimParams p;
    edit(p);
    try {
        p.validate();
    } catch (ValidationError const& e) {
        return e.key();
    }
    return "";
}

} // namespace

TEST_CASE("default parameters are valid")
{
    CHECK_NOTHROW(SimParams{}.validate());
    SimParams euler;
    euler.epsilon = 0.0;
    CHECK_NOTHROW(euler.validate());
}

TEST_CASE("validation names the offending field")
{
    CHECK(failing_key([](SimParams& p) { p.epsilon = -1.0; }) == "epsilon");
    CHECK(failing_key([](SimParams& p) { p.dt = 0.0; }) == "dt");
    CHECK(failing_key([](SimParams& p) { p.t_final = -0.5; }) == "t_final");
    CHECK(failing_key([](SimParams& p) { p.sample_every = 0; }) == "sample_every");
    CHECK(failing_key([](SimParams& p) { p.screened.max_iters = 0; }) == "solver_max_iters");
    CHECK(failing_key([](SimParams& p) { p.epsilon = std::nan(""); }) == "epsilon");
}
