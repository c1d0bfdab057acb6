#ifndef DEEPFRI_DEEPFRI_HPP
#define DEEPFRI_DEEPFRI_HPP

#include "deepfri/channel.hpp"
#include "deepfri/codes.hpp"
#include "deepfri/deep_ali.hpp"
#include "deepfri/deep_fri.hpp"
#include "deepfri/errors.hpp"
#include "deepfri/fri.hpp"
#include "deepfri/gf2n.hpp"
#include "deepfri/lab.hpp"
#include "deepfri/poly.hpp"
#include "deepfri/presets.hpp"
#include "deepfri/rational.hpp"
#include "deepfri/serialize.hpp"
#include "deepfri/subspace.hpp"

#endif  // DEEPFRI_DEEPFRI_HPP
