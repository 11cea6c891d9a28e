#!/usr/bin/env python3
"""Writes the orbit scenarios used by the acceptance run.

Each scenario has, per altitude (500 km and 5000 km):
  * 48 frames along an inclined circular orbit, looking down and ahead;
  * 4 limb-grazing frames whose left plane leaves only a thin cap of the globe
    near the equator at longitudes 0, pi/2, pi and -pi/2 inside the view.

The root latitude range is shifted so that the equator runs through the middle
of a start-level tile row instead of along a tile edge.
"""

import json
import math
import pathlib

R = 6371000.0
ALTITUDES = (500e3, 5000e3)
ORBIT_FRAMES = 48
INCLINATION = math.radians(45.0)
PITCH_AHEAD = math.radians(35.0)
FOV_Y = math.radians(60.0)
ASPECT = 4.0 / 3.0
NEAR = 1000.0
LIMB_DEPTH = 10e3  # how far the left plane dips below the sphere
LIMB_AZIMUTHS = (0.0, math.pi / 2, math.pi, 3 * math.pi / 2)
ROOT_LAT = (-15 * math.pi / 34, math.pi / 2)


def norm(v):
    n = math.sqrt(sum(c * c for c in v))
    return [c / n for c in v]


def add(a, b, s=1.0):
    return [x + s * y for x, y in zip(a, b)]


def scale(a, s):
    return [s * x for x in a]


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def left_normal(fwd, up_hint, fov_y, aspect):
    """Outward normal of the left plane, built the same way as the library."""
    right = norm(cross(fwd, up_hint))
    tw = aspect * math.tan(0.5 * fov_y)
    return norm(add(scale(right, -1.0), fwd, -tw))


def rnd(v):
    return [round(c, 6) for c in v]


def orbit_frames(altitude):
    d = R + altitude
    horizon = math.sqrt(d * d - R * R)
    # Orbit plane spanned by p (equatorial) and q (tilted by the inclination).
    p = [1.0, 0.0, 0.0]
    q = [0.0, math.sin(INCLINATION), math.cos(INCLINATION)]
    cams = []
    for k in range(ORBIT_FRAMES):
        a = 2 * math.pi * k / ORBIT_FRAMES
        pos = add(scale(p, math.cos(a)), q, math.sin(a))
        vel = add(scale(p, -math.sin(a)), q, math.cos(a))
        nadir = scale(pos, -1.0)
        look = norm(add(scale(nadir, math.cos(PITCH_AHEAD)), vel, math.sin(PITCH_AHEAD)))
        cams.append({
            "eye": rnd(scale(pos, d)),
            "look_dir": look,
            "up_hint": vel,
            "fov_y": FOV_Y,
            "aspect": ASPECT,
            "near": NEAR,
            "far": round(0.8 * horizon, 3),
        })
    return cams


def limb_frames(altitude):
    d = R + altitude
    up = [0.0, 1.0, 0.0]
    cams = []
    for theta in LIMB_AZIMUTHS:
        m = [math.sin(theta), 0.0, math.cos(theta)]
        m_perp = [math.cos(theta), 0.0, -math.sin(theta)]
        # The left normal makes an angle of 90 degrees plus the horizontal
        # half-angle with the view direction; pick the rotation that puts -m
        # on the left.
        hx = math.atan(ASPECT * math.tan(0.5 * FOV_Y))
        target = scale(m, -1.0)
        fwd = None
        for sign in (1.0, -1.0):
            ang = sign * (math.pi / 2 + hx)
            cand = norm(add(scale(target, math.cos(ang)), m_perp, math.sin(ang)))
            if dot(left_normal(cand, up, FOV_Y, ASPECT), target) > 1 - 1e-12:
                fwd = cand
                break
        assert fwd is not None
        t = math.sqrt(d * d - (R - LIMB_DEPTH) ** 2)
        # Put the eye on the left plane, on the side from which the cap lies ahead.
        if dot(fwd, m_perp) > 0:
            t = -t
        eye = add(scale(m, R - LIMB_DEPTH), m_perp, t)
        assert dot(fwd, add(scale(m, R), eye, -1.0)) > 0
        cams.append({
            "eye": rnd(eye),
            "look_dir": fwd,
            "up_hint": up,
            "fov_y": FOV_Y,
            "aspect": ASPECT,
            "near": NEAR,
            "far": round(2.0 * d, 3),
        })
    return cams


def scenario(name, synth):
    cams = []
    for alt in ALTITUDES:
        cams += orbit_frames(alt)
        cams += limb_frames(alt)
    return {
        "name": name,
        "seed": 0,
        "geodetic": {"radius": R},
        "terrain": {
            "start_level": 4,
            "max_level": 7,
            "root_lat": list(ROOT_LAT),
            "root_lon": [-math.pi, math.pi],
            "heightfield": {"synth": synth},
        },
        "cull": {"inflation": 1.1},
        "methods": ["AABB8", "ANALYTIC_BIN_EXACT"],
        "oracle": {"enabled": True, "lattice": [33, 33, 5]},
        "cameras": cams,
    }


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "scenarios"
    out.mkdir(exist_ok=True)
    docs = {
        "orbit_sinusoidal.json": scenario("orbit_sinusoidal", {"kind": "SINUSOIDAL", "height": 2000, "k": 8}),
        "orbit_peak.json": scenario(
            "orbit_peak", {"kind": "SINGLE_PEAK", "height": 8848, "peak_lat": 0.1, "peak_lon": 0.1}),
    }
    for name, doc in docs.items():
        (out / name).write_text(json.dumps(doc, indent=1) + "\n")
        print(f"wrote {out / name}: {len(doc['cameras'])} frames")


if __name__ == "__main__":
    main()
