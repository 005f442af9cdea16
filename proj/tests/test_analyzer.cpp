#include <doctest.h>

TEST_CASE("placeholder_analyzer") { CHECK(true); }
