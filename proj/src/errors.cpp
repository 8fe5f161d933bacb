#include "pwave/errors.hpp"

// Header-only hierarchy; this TU just keeps the header self-contained.
