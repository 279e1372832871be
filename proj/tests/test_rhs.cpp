#include <catch2/catch_amalgamated.hpp>
#include "muskat/muskat.hpp"
TEST_CASE("placeholder") { REQUIRE(true); }
