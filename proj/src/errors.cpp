#include "polymapf/errors.hpp"
