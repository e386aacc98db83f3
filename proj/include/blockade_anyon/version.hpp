#pragma once

#ifndef BLOCKADE_ANYON_VERSION_STRING
#define BLOCKADE_ANYON_VERSION_STRING "0.1.0"
#endif
