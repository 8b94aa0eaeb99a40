'''
Projective machinery of the hyperboloid model of SL(2,R)~.

Points are homogeneous row vectors (x0;x1;x2;x3), determined up to a positive
factor, and isometries are 4x4 matrices acting on the right: X' = X . m.
The interior of the one-sheeted hyperboloid solid is

    Q(X) = -x0*x0 - x1*x1 + x2*x2 + x3*x3 < 0.

The model comes from unit-determinant matrices [[d, b], [c, a]] through the
substitution a = x0 + x3, b = x1 + x2, c = -x1 + x2, d = x0 - x3, so that
bc - ad = Q(X).  In that picture a fibre translation S(phi) is multiplication
on the left by a rotation matrix, and the translation T(X) of (1.5) is
multiplication on the right by the matrix of X.  Nothing below stores a, b, c, d.
'''

import math
import logging
from collections import namedtuple

import numpy

from .errors import DomainError, ValidationError

log = logging.getLogger(__name__)

TWO_PI = 2 * math.pi

# signature (- - + +) of the polarity
POLARITY = numpy.diag([-1.0, -1.0, 1.0, 1.0])

PROJECTIVE_TOL = 1e-10

#-----------------------------------------------------------------------------


def principal_angle(phi):
    '''
    Reduce an angle to (-pi, pi].  Returns (angle, winding) with phi = angle + 2 pi winding.
    '''
    angle = math.remainder(phi, TWO_PI)
    if angle <= -math.pi:
        angle += TWO_PI
    winding = int(round((phi - angle) / TWO_PI))
    return angle, winding


def projective_normal(values):
    '''
    Scale an array so that its largest-magnitude entry has magnitude one.

    The sign is kept: only positive factors are projective freedom here.
    '''
    values = numpy.asarray(values, dtype=float)
    scale = numpy.max(numpy.abs(values))
    if scale == 0:
        raise DomainError("[sl2prism.kernel] cannot normalize a zero array")
    return values / scale


class ProjectivePoint(object):
    '''
    A point of the model in homogeneous coordinates.

    coords  = four reals (x0, x1, x2, x3), not all zero
    winding = universal-cover sheet: the fibre coordinate of the point is its
              principal angle in (-pi, pi] plus 2 pi * winding
    '''
    def __init__(self, coords, winding=0):
        coords = numpy.array(coords, dtype=float).reshape(4)
        if not numpy.any(coords):
            raise ValidationError("[sl2prism.kernel] homogeneous coordinates must not all vanish")
        coords.setflags(write=False)
        self.coords = coords
        self.winding = int(winding)

    x0 = property(lambda self: self.coords[0])
    x1 = property(lambda self: self.coords[1])
    x2 = property(lambda self: self.coords[2])
    x3 = property(lambda self: self.coords[3])

    def quadratic_form(self):
        return quadratic_form(self.coords)

    def is_interior(self):
        return self.quadratic_form() < 0

    def normalized(self):
        '''
        Return the same point scaled to Q = -1 (positive factor only).
        '''
        qf = self.quadratic_form()
        if not qf < 0:
            raise DomainError("[sl2prism.kernel] point %s is not interior (Q = %g)" % (self, qf))
        return ProjectivePoint(self.coords / math.sqrt(-qf), self.winding)

    def fibre_coordinate(self):
        '''
        The fibre coordinate on the universal cover: atan2(x1, x0) + 2 pi * winding.
        '''
        return math.atan2(self.x1, self.x0) + TWO_PI * self.winding

    def transform(self, iso):
        '''
        Apply iso.  The image lands on the sheet whose fibre coordinate is
        closest to this point's fibre coordinate plus iso.fibre_shift.
        '''
        coords = self.coords @ iso.matrix
        guess = self.fibre_coordinate() + iso.fibre_shift
        winding = int(round((guess - math.atan2(coords[1], coords[0])) / TWO_PI))
        return ProjectivePoint(coords, winding)

    def equiv(self, other, tol=PROJECTIVE_TOL):
        return self.residual(other) <= tol

    def residual(self, other):
        '''
        Distance between the two points after projective normalization.
        '''
        return float(numpy.max(numpy.abs(projective_normal(self.coords) - projective_normal(other.coords))))

    def __repr__(self):
        txt = "(%s)" % ";".join("%.12g" % x for x in self.coords)
        if self.winding:
            txt += "[sheet %d]" % self.winding
        return txt


def origin():
    '''
    E0(1;0;0;0)
    '''
    return ProjectivePoint((1.0, 0.0, 0.0, 0.0))


def _coords_of(point):
    if isinstance(point, ProjectivePoint):
        return point.coords
    return numpy.asarray(point, dtype=float)


def quadratic_form(point):
    '''
    Q(X) = -x0^2 - x1^2 + x2^2 + x3^2; accepts a ProjectivePoint or a length-4 array.
    '''
    x = _coords_of(point)
    return float(-x[0] * x[0] - x[1] * x[1] + x[2] * x[2] + x[3] * x[3])

#-----------------------------------------------------------------------------


class Isometry(object):
    '''
    A 4x4 matrix acting on row coordinate vectors, determined up to a positive factor.

    a.compose(b) (also a @ b) applies a first and then b.

    fibre_shift is the lift of the isometry to the universal cover, given as
    the change of fibre coordinate it causes at the origin.  The matrix only
    knows it modulo 2 pi; fibre translations carry it exactly, and products,
    inverses and powers add it up.
    '''
    def __init__(self, matrix, fibre_shift=None):
        matrix = numpy.array(matrix, dtype=float).reshape(4, 4)
        matrix.setflags(write=False)
        self.matrix = matrix
        if fibre_shift is None:
            fibre_shift = math.atan2(matrix[0, 1], matrix[0, 0])
        self.fibre_shift = float(fibre_shift)

    @classmethod
    def identity(cls):
        return cls(numpy.eye(4))

    def compose(self, other):
        return Isometry(self.matrix @ other.matrix, self.fibre_shift + other.fibre_shift)

    __matmul__ = compose

    def inverse(self):
        return Isometry(numpy.linalg.inv(self.matrix), -self.fibre_shift)

    def power(self, n):
        return Isometry(numpy.linalg.matrix_power(self.matrix, n), n * self.fibre_shift)

    def apply(self, point):
        return point.transform(self)

    def scale_factor(self):
        '''
        The factor k with Q(X . m) = k Q(X) for all X.
        '''
        gram = self.matrix @ POLARITY @ self.matrix.T
        return float(numpy.mean(numpy.diag(gram) / numpy.diag(POLARITY)))

    def residual(self, other):
        '''
        Largest entrywise difference after scaling both matrices to unit largest magnitude.
        '''
        return float(numpy.max(numpy.abs(projective_normal(self.matrix) - projective_normal(other.matrix))))

    def equiv(self, other, tol=PROJECTIVE_TOL):
        return self.residual(other) <= tol

    def is_identity(self, tol=PROJECTIVE_TOL):
        return self.equiv(Isometry.identity(), tol)

    def __repr__(self):
        return "Isometry(%s)" % numpy.array2string(self.matrix, precision=6, suppress_small=True)

#-----------------------------------------------------------------------------
# the generating isometries


def fibre_translation(phi):
    '''
    S(phi): moves every point along its fibre; S(phi) S(psi) = S(phi + psi).
    '''
    c, s = math.cos(phi), math.sin(phi)
    return Isometry([[c, s, 0, 0],
                     [-s, c, 0, 0],
                     [0, 0, c, -s],
                     [0, 0, s, c]], phi)


def translation_to(point):
    '''
    T(X): the translation mapping the origin E0 onto X, on X's sheet.
    '''
    x0, x1, x2, x3 = _normalized_coords(point)
    return Isometry([[x0, x1, x2, x3],
                     [-x1, x0, x3, -x2],
                     [x2, x3, x0, x1],
                     [x3, -x2, -x1, x0]], _lift(point))


def translation_from(point):
    '''
    Inverse of translation_to(X): the same pattern built on (x0, -x1, -x2, -x3).
    '''
    x0, x1, x2, x3 = _normalized_coords(point)
    lift = _lift(point)
    return Isometry(translation_to((x0, -x1, -x2, -x3)).matrix, None if lift is None else -lift)


def _lift(point):
    if isinstance(point, ProjectivePoint):
        return point.fibre_coordinate()
    return None


def _normalized_coords(point):
    x = _coords_of(point)
    qf = quadratic_form(x)
    if not qf < 0:
        raise DomainError("[sl2prism.kernel] translation needs an interior point, got Q = %g" % qf)
    return x / math.sqrt(-qf)


def rotation_origin(omega):
    '''
    R_E0(omega): rotation about the fibre line through the origin (the x axis).
    '''
    omega, _ = principal_angle(omega)
    c, s = math.cos(omega), math.sin(omega)
    return Isometry([[1, 0, 0, 0],
                     [0, 1, 0, 0],
                     [0, 0, c, s],
                     [0, 0, -s, c]])


def rotation_about_fibre(point, omega):
    '''
    R_X(omega) = T^-1 R_E0(omega) T: rotation about the fibre line through X.
    '''
    return translation_from(point) @ rotation_origin(omega) @ translation_to(point)


def foot_point(point):
    '''
    Intersection of the fibre through X with the base plane x1 = 0.
    '''
    x0, x1, x2, x3 = _coords_of(point)
    return ProjectivePoint((x0 * x0 + x1 * x1,
                            0.0,
                            x0 * x2 - x1 * x3,
                            x0 * x3 + x1 * x2))

#-----------------------------------------------------------------------------
# coordinates


class HyperboloidCoords(namedtuple('HyperboloidCoords', 'r theta phi')):
    '''
    r     = distance parameter in the base plane (tanh r is the Euclidean radius of the foot point)
    theta = polar angle in the base plane
    phi   = fibre coordinate, a real number on the universal cover
    '''
    __slots__ = ()


class InhomogeneousCoords(namedtuple('InhomogeneousCoords', 'x y z')):
    __slots__ = ()


def from_hyperboloid(coords):
    '''
    Embed hyperboloid coordinates (r, theta, phi); the result satisfies Q = -1.

    A negative r is read as the point (|r|, theta + pi, phi).
    '''
    r, theta, phi = coords
    angle, winding = principal_angle(phi)
    ch, sh = math.cosh(r), math.sinh(r)
    return ProjectivePoint((ch * math.cos(angle),
                            ch * math.sin(angle),
                            sh * math.cos(theta - angle),
                            sh * math.sin(theta - angle)), winding)


def to_hyperboloid(point):
    '''
    Hyperboloid coordinates of an interior point; theta in [0, 2 pi), phi on the point's sheet.
    '''
    if not isinstance(point, ProjectivePoint):
        point = ProjectivePoint(point)
    x0, x1, x2, x3 = point.normalized().coords
    rho = math.hypot(x2, x3)
    r = math.asinh(rho)
    phi = math.atan2(x1, x0)
    if rho == 0:
        theta = 0.0
    else:
        theta = (math.atan2(x3, x2) + phi) % TWO_PI
    return HyperboloidCoords(r, theta, phi + TWO_PI * point.winding)


def to_inhomogeneous(point):
    x0, x1, x2, x3 = _coords_of(point)
    if x0 == 0:
        raise DomainError("[sl2prism.kernel] point with x0 = 0 has no inhomogeneous coordinates")
    return InhomogeneousCoords(x1 / x0, x2 / x0, x3 / x0)


def from_inhomogeneous(coords):
    x, y, z = coords
    return ProjectivePoint((1.0, x, y, z))
