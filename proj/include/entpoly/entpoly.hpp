#pragma once

#include "entpoly/eigen.hpp"
#include "entpoly/entropies.hpp"
#include "entpoly/errors.hpp"
#include "entpoly/inequalities.hpp"
#include "entpoly/measures.hpp"
#include "entpoly/network.hpp"
#include "entpoly/reproduce.hpp"
#include "entpoly/search.hpp"
#include "entpoly/state_io.hpp"
#include "entpoly/states.hpp"
#include "entpoly/tensor.hpp"
