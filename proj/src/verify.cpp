#include "qtheta/verify.hpp"
