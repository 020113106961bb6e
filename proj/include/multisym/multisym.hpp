#pragma once

#include "multisym/classify.hpp"
#include "multisym/io.hpp"
#include "multisym/kform.hpp"
#include "multisym/normal_form.hpp"
#include "multisym/orbit_tangent.hpp"
#include "multisym/report.hpp"
#include "multisym/sample.hpp"
