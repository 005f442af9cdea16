#include <doctest.h>

TEST_CASE("placeholder_validator") { CHECK(true); }
