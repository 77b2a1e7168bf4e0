#!/usr/bin/env python3
"""Generate the fixture maps and worlds under data/.

Three desk-scale maps (lab, house, office) with labeled areas, plus eight
episode worlds per map (different targets and starts). Run from the repo
root:

    python3 scripts/make_fixtures.py
"""

import json
import os

RES = 0.25

BASE = os.path.join(os.path.dirname(__file__), "..", "data")


def grid(width_m, height_m, walls):
    w = int(round(width_m / RES))
    h = int(round(height_m / RES))
    cells = [[0] * w for _ in range(h)]
    for (x0, y0, x1, y1) in walls:
        for gy in range(h):
            for gx in range(w):
                cx = (gx + 0.5) * RES
                cy = (gy + 0.5) * RES
                if x0 <= cx <= x1 and y0 <= cy <= y1:
                    cells[gy][gx] = 1
    return cells


def wall_h(y, x0, x1, gaps=(), t=0.25):
    """Horizontal wall segments at height y with door gaps (x ranges)."""
    segs = []
    xs = sorted(gaps)
    cur = x0
    for (gx0, gx1) in xs:
        if gx0 > cur:
            segs.append((cur, y - t / 2, gx0, y + t / 2))
        cur = gx1
    if cur < x1:
        segs.append((cur, y - t / 2, x1, y + t / 2))
    return segs


def wall_v(x, y0, y1, gaps=(), t=0.25):
    segs = []
    ys = sorted(gaps)
    cur = y0
    for (gy0, gy1) in ys:
        if gy0 > cur:
            segs.append((x - t / 2, cur, x + t / 2, gy0))
        cur = gy1
    if cur < y1:
        segs.append((x - t / 2, cur, x + t / 2, y1))
    return segs


def rect_poly(x0, y0, x1, y1):
    return [[x0, y0], [x1, y0], [x1, y1], [x0, y1]]


def write_map(name, width_m, height_m, walls, areas):
    doc = {
        "resolution": RES,
        "floors": 1,
        "origin": [0.0, 0.0],
        "grids": [grid(width_m, height_m, walls)],
        "areas": [
            {"label": label, "floor": 0, "polygon": poly} for (label, poly) in areas
        ],
    }
    path = os.path.join(BASE, "maps", name + ".json")
    with open(path, "w") as f:
        json.dump(doc, f)
    print("wrote", path)


def write_world(name, map_name, robot, target_id, persons, sentences):
    doc = {
        "name": name,
        "map": os.path.join("..", "maps", map_name + ".json"),
        "robot": {"x": robot[0], "y": robot[1], "theta": robot[2], "floor": 0},
        "target_id": target_id,
        "persons": [
            {
                "id": pid,
                "x": px,
                "y": py,
                "theta": pth,
                "floor": 0,
                "appearance": appearance,
                "location_clue": clue,
            }
            for (pid, px, py, pth, appearance, clue) in persons
        ],
        "sentences": os.path.join("..", "sentences", sentences + ".txt"),
    }
    path = os.path.join(BASE, "worlds", name + ".json")
    with open(path, "w") as f:
        json.dump(doc, f, indent=1)
    print("wrote", path)


# ---------------------------------------------------------------- lab map
# 16 x 10 m. Border walls plus two room dividers.
lab_walls = []
lab_walls += wall_h(0.125, 0, 16)           # bottom border
lab_walls += wall_h(9.875, 0, 16)           # top border
lab_walls += wall_v(0.125, 0, 10)           # left border
lab_walls += wall_v(15.875, 0, 10)          # right border
# Professors' office: top-left room.
lab_walls += wall_h(6.5, 0, 5.0, gaps=[(3.2, 4.2)])
lab_walls += wall_v(5.0, 6.5, 10, gaps=[(7.8, 8.8)])
# Robot workspace: right block, doors at the middle and near the bottom.
lab_walls += wall_v(11.5, 0, 6.0, gaps=[(0.7, 1.7), (2.4, 3.6)])

lab_areas = [
    ("office for professors", rect_poly(0.3, 6.7, 4.8, 9.7)),
    ("desk for students", rect_poly(0.3, 0.3, 5.5, 6.2)),
    ("sofa", rect_poly(5.9, 0.3, 11.2, 3.0)),
    ("open space", rect_poly(5.3, 6.8, 15.7, 9.7)),
    ("workspace with robots", rect_poly(11.8, 0.3, 15.7, 5.8)),
]

write_map("lab", 16, 10, lab_walls, lab_areas)

# --------------------------------------------------------------- house map
# 12 x 9 m, four rooms.
house_walls = []
house_walls += wall_h(0.125, 0, 12)
house_walls += wall_h(8.875, 0, 12)
house_walls += wall_v(0.125, 0, 9)
house_walls += wall_v(11.875, 0, 9)
house_walls += wall_v(6.0, 0, 9, gaps=[(3.6, 4.8), (7.0, 8.2)])
house_walls += wall_h(4.5, 0, 6.0, gaps=[(2.4, 3.4)])
house_walls += wall_h(4.5, 6.0, 12, gaps=[(8.6, 9.8)])

house_areas = [
    ("kitchen", rect_poly(0.3, 4.8, 5.7, 8.7)),
    ("living room", rect_poly(0.3, 0.3, 5.7, 4.2)),
    ("bedroom", rect_poly(6.3, 4.8, 11.7, 8.7)),
    ("dining room", rect_poly(6.3, 0.3, 11.7, 4.2)),
]

write_map("house", 12, 9, house_walls, house_areas)

# -------------------------------------------------------------- office map
# 14 x 10 m.
office_walls = []
office_walls += wall_h(0.125, 0, 14)
office_walls += wall_h(9.875, 0, 14)
office_walls += wall_v(0.125, 0, 10)
office_walls += wall_v(13.875, 0, 10)
office_walls += wall_v(4.5, 5.5, 10, gaps=[(6.8, 8.0)])   # meeting room wall
office_walls += wall_h(5.5, 0, 4.5, gaps=[(1.8, 3.0)])
office_walls += wall_v(9.5, 0, 4.5, gaps=[(1.6, 2.8)])    # break room wall
office_walls += wall_h(4.5, 9.5, 14, gaps=[(10.6, 11.8)])

office_areas = [
    ("meeting room", rect_poly(0.3, 5.8, 4.2, 9.7)),
    ("open office desks", rect_poly(0.3, 0.3, 9.2, 5.2) if False else rect_poly(0.3, 0.3, 9.2, 4.2)),
    ("printer corner", rect_poly(8.8, 5.8, 13.7, 9.7)),
    ("break room", rect_poly(9.8, 0.3, 13.7, 4.2)),
]

write_map("office", 14, 10, office_walls, office_areas)

# ---------------------------------------------------------------- worlds
# Lab persons. Start poses vary; targets sit in prior-favored areas that are
# mostly NOT the nearest area, so distance-only search goes wrong first.
lab_persons = [
    (1, 13.6, 4.8, 2.6, "wearing a white shirt with black hair", "student that works with robots"),
    (2, 2.2, 8.6, -0.7, "wearing a black shirt with a hat", "professor"),
    (3, 8.0, 1.4, 1.6, "wearing a red knit with black hair", "student taking a rest"),
    (4, 3.0, 3.2, 0.4, "wearing a blue shirt with brown hair", "student studying at a desk"),
]

lab_episodes = [
    ("lab_w1", (1.2, 1.0, 0.3), 1, "student_robots"),
    ("lab_w2", (7.0, 8.8, -1.2), 1, "student_robots"),
    ("lab_w3", (13.0, 8.8, -1.6), 2, "professor"),
    ("lab_w4", (8.5, 4.0, 2.4), 2, "professor"),
    ("lab_w5", (1.2, 5.0, 0.0), 3, "student_rest"),
    ("lab_w6", (14.6, 8.6, -2.2), 3, "student_rest"),
    ("lab_w7", (14.0, 1.2, 1.8), 4, "student_desk"),
    ("lab_w8", (9.0, 9.0, -2.0), 4, "student_desk"),
]
for (name, robot, target, sentences) in lab_episodes:
    write_world(name, "lab", robot, target, lab_persons, sentences)

house_persons = [
    (1, 2.4, 7.4, -0.9, "wearing a white shirt with black hair", "dad and cooking for dinner"),
    (2, 2.8, 2.0, 0.8, "wearing a striped shirt with brown hair", "grandma and watching TV"),
    (3, 9.4, 7.6, -2.1, "wearing a striped shirt with black hair", "kid preparing for bed"),
]

house_episodes = [
    ("house_w1", (10.8, 1.2, 2.2), 1, "dad_cooking"),
    ("house_w2", (6.4, 0.9, 1.6), 1, "dad_cooking"),
    ("house_w3", (10.8, 7.8, -2.6), 2, "grandma_tv"),
    ("house_w4", (6.5, 8.4, -1.8), 2, "grandma_tv"),
    ("house_w5", (1.0, 0.9, 0.9), 3, "kid_bed"),
    ("house_w6", (4.8, 1.2, 1.2), 3, "kid_bed"),
    ("house_w7", (1.0, 8.2, -0.4), 2, "grandma_tv"),
    ("house_w8", (11.0, 3.8, 2.8), 1, "dad_cooking"),
]
for (name, robot, target, sentences) in house_episodes:
    write_world(name, "house", robot, target, house_persons, sentences)

office_persons = [
    (1, 2.2, 8.6, -0.8, "wearing a purple shirt with black hair", "employer and doing a meeting"),
    (2, 4.6, 2.2, 1.1, "wearing a yellow shirt with brown hair", "employee and doing office work"),
    (3, 12.2, 2.2, 1.9, "wearing a green shirt with black hair", "employee and taking a rest"),
    (4, 11.4, 8.2, -2.4, "wearing a blue shirt with gray hair", "staff printing documents"),
]

office_episodes = [
    ("office_w1", (12.8, 0.9, 1.9), 1, "employer_meeting"),
    ("office_w2", (7.6, 1.0, 1.4), 1, "employer_meeting"),
    ("office_w3", (12.8, 9.0, -2.2), 2, "employee_work"),
    ("office_w4", (1.0, 9.0, -0.6), 2, "employee_work"),
    ("office_w5", (1.0, 1.0, 0.6), 3, "employee_rest"),
    ("office_w6", (2.2, 8.8, -0.9), 3, "employee_rest"),
    ("office_w7", (1.0, 4.0, 0.2), 4, "staff_printer"),
    ("office_w8", (6.2, 1.0, 1.1), 4, "staff_printer"),
]
for (name, robot, target, sentences) in office_episodes:
    write_world(name, "office", robot, target, office_persons, sentences)

print("done")
