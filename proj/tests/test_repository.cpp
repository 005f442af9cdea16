#include <doctest.h>

TEST_CASE("placeholder_repository") { CHECK(true); }
