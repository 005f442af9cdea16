#include <doctest.h>

TEST_CASE("placeholder_render") { CHECK(true); }
