#pragma once

#include "kam/embed.hpp"
#include "kam/errors.hpp"
#include "kam/geometry.hpp"
#include "kam/io.hpp"
#include "kam/matrix.hpp"
#include "kam/means.hpp"
#include "kam/project.hpp"
#include "kam/quaternion.hpp"
#include "kam/random.hpp"
#include "kam/spectral.hpp"
#include "kam/verify.hpp"
