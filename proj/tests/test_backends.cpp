#include <catch2/catch_amalgamated.hpp>

#include "anchormine/anchormine.hpp"
