#!/usr/bin/env python3
"""Writes the bundled scene presets into data/scenes.

    python3 tools/scenegen.py [output_dir]
"""
import json
import math
import pathlib
import sys


def surface(name, center, u, v, width, height, albedo, textures=()):
    return {"name": name, "center": center, "u_axis": u, "v_axis": v, "width": width,
            "height": height, "albedo": albedo, "textures": list(textures)}


def noise(region, cell, seed, low=0.12, high=0.85, density=0.5):
    return {"kind": "noise_patch", "region": region, "cell": cell, "seed": seed, "low": low,
            "high": high, "density": density, "smooth": True}


RIG = {"camera": {"translation": [0.1, 0, 1.0], "rpy_deg": [-90, 0, -90]},
       "arm_base": {"translation": [0.1, 0, 1.15]},
       "pan_direction": -1, "tilt_direction": 1,
       "pan_limits_deg": [-35, 35], "tilt_limits_deg": [-30, 30]}


def scene(name, surfaces, trajectory, seed, power=25.0, ambient=0.04, noise_sigma=1.5):
    return {"format": "alight-scene", "version": 1, "name": name, "ambient": ambient,
            "lit_ambient": 0.6, "noise_sigma": noise_sigma, "rng_seed": seed,
            "spotlight": {"power": power, "cone_full_angle_deg": 30, "edge_softness_deg": 3},
            "surfaces": surfaces, "rig": RIG, "trajectory": trajectory}


def corridor(name, seed, length=16.0, half_w=1.4, height=2.6, rich=False, trajectory=None):
    side = [-length / 2 + 0.5, -height / 2 + 0.3, length / 2 - 0.5, height / 2 - 0.3]
    centre_x = length / 2 - 1
    floor_tex = [noise([-length / 2, -half_w, length / 2, half_w], 0.12, seed + 3, 0.2, 0.7)] if rich else []
    end_tex = [noise([-half_w, -height / 2, half_w, height / 2], 0.1, seed + 2)] if rich else []
    surfaces = [
        surface("floor", [centre_x, 0, 0], [1, 0, 0], [0, 1, 0], length, 2 * half_w, 0.45, floor_tex),
        surface("ceiling", [centre_x, 0, height], [1, 0, 0], [0, -1, 0], length, 2 * half_w, 0.5),
        surface("left_wall", [centre_x, half_w, height / 2], [1, 0, 0], [0, 0, 1], length, height, 0.4,
                [noise(side, 0.09, seed)]),
        surface("right_wall", [centre_x, -half_w, height / 2], [1, 0, 0], [0, 0, -1], length, height, 0.4,
                [noise(side, 0.09, seed + 1)]),
        surface("end_wall", [length - 1, 0, height / 2], [0, 1, 0], [0, 0, 1], 2 * half_w, height, 0.5, end_tex),
        surface("back_wall", [-1, 0, height / 2], [0, -1, 0], [0, 0, 1], 2 * half_w, height, 0.5),
    ]
    return scene(name, surfaces, trajectory, seed)


def straight(duration=21.0, speed=0.25, yaw_amp_deg=6.0, lateral=0.2):
    out = []
    for k in range(int(duration * 4) + 1):
        t = k / 4
        out.append({"t": t, "position": [speed * t, lateral * math.sin(2 * math.pi * t / 14), 0.0],
                    "yaw_deg": yaw_amp_deg * math.sin(2 * math.pi * t / 10)})
    return out


def room(name, seed, trajectory, half=3.0, height=2.6):
    surfaces = [
        surface("floor", [0, 0, 0], [1, 0, 0], [0, 1, 0], 2 * half, 2 * half, 0.4,
                [noise([-half, -half, half, half], 0.15, seed, 0.2, 0.7)]),
        surface("ceiling", [0, 0, height], [1, 0, 0], [0, -1, 0], 2 * half, 2 * half, 0.5),
    ]
    walls = [("north", [half, 0, height / 2], [0, 1, 0]), ("south", [-half, 0, height / 2], [0, -1, 0]),
             ("west", [0, half, height / 2], [-1, 0, 0]), ("east", [0, -half, height / 2], [1, 0, 0])]
    region = [-half + 0.2, -height / 2 + 0.2, half - 0.2, height / 2 - 0.2]
    for i, (wall, centre, u) in enumerate(walls):
        surfaces.append(surface(wall, centre, u, [0, 0, 1], 2 * half, height, 0.45,
                                [noise(region, 0.1, seed + 1 + i)]))
    return scene(name, surfaces, trajectory, seed)


def arc(duration=21.0, radius=0.8):
    out = []
    for k in range(int(duration * 4) + 1):
        t = k / 4
        a = 2 * math.pi * t / 40
        out.append({"t": t, "position": [-0.5 + radius * math.sin(a), radius * (1 - math.cos(a)) - radius, 0.0],
                    "yaw_deg": math.degrees(a) * 0.5})
    return out


def dim_checkerboard():
    board = surface("board", [2.1, 0, 1.0], [0, 1, 0], [0, 0, 1], 3.2, 2.6, 0.5,
                    [{"kind": "checkerboard", "cell": 0.2, "low": 0.02, "high": 1.0}])
    s = scene("dim_checkerboard", [board],
              [{"t": 0, "position": [0, 0, 0], "yaw_deg": 0}, {"t": 10, "position": [0, 0, 0], "yaw_deg": 0}],
              seed=5, power=0.33, ambient=0.02, noise_sigma=1.0)
    s["spotlight"].update({"cone_full_angle_deg": 40, "edge_softness_deg": 4})
    s["rig"] = dict(RIG, arm_base={"translation": [0.1, 0, 1.0]})
    return s


PRESETS = {
    "corridor_L1": lambda: corridor("corridor_L1", 11, trajectory=straight()),
    "corridor_L2": lambda: corridor("corridor_L2", 31, length=26.0, half_w=1.2,
                                    trajectory=straight(speed=0.4, yaw_amp_deg=4.0, lateral=0.15)),
    "corridor_R": lambda: corridor("corridor_R", 41, rich=True, trajectory=straight()),
    "room_R": lambda: room("room_R", 21, arc()),
    "room_static": lambda: room("room_static", 21, [{"t": 0, "position": [-1.0, 0, 0], "yaw_deg": 0},
                                                    {"t": 30, "position": [-1.0, 0, 0], "yaw_deg": 0}]),
    "dim_checkerboard": dim_checkerboard,
}


def main():
    out = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).parent.parent / "data" / "scenes"
    out.mkdir(parents=True, exist_ok=True)
    for name, make in PRESETS.items():
        (out / f"{name}.json").write_text(json.dumps(make(), indent=1) + "\n")


if __name__ == "__main__":
    main()
