#pragma once

#include "muskat/config.hpp"
#include "muskat/driver.hpp"
#include "muskat/field.hpp"
#include "muskat/finite_diff.hpp"
#include "muskat/identities.hpp"
#include "muskat/io.hpp"
#include "muskat/norms.hpp"
#include "muskat/profiles.hpp"
#include "muskat/quadrature.hpp"
#include "muskat/rhs.hpp"
#include "muskat/spectral.hpp"
#include "muskat/stepper.hpp"
#include "muskat/util.hpp"
