#ifndef BREQUANT_VERSION_HPP
#define BREQUANT_VERSION_HPP

#define BREQUANT_VERSION "0.1.0"

#endif
