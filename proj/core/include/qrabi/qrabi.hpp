#pragma once

#include "qrabi/dynamics.hpp"
#include "qrabi/entanglement.hpp"
#include "qrabi/errors.hpp"
#include "qrabi/model.hpp"
#include "qrabi/quantum_core.hpp"
#include "qrabi/strong_coupling.hpp"
#include "qrabi/weak_coupling.hpp"
#include "qrabi/version.hpp"
