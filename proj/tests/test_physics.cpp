#include <doctest.h>

TEST_CASE("placeholder_physics") { CHECK(true); }
