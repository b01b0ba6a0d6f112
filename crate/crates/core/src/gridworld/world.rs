use std::fmt;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Number of distinct perceptual states: occupancy of the four neighbours.
pub const PERCEPTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Position {
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    North,
    East,
    South,
    West,
}

impl Action {
    pub const ALL: [Action; 4] = [Action::North, Action::East, Action::South, Action::West];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }
}

/// What lies beyond the grid's edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// The outermost ring of cells is wall.
    #[default]
    Walled,
    /// Edges wrap around (a torus); no implicit walls.
    Wrapped,
}

/// Static obstacles on a grid plus the robot's position. The robot never
/// stands on an obstacle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridWorld {
    width: usize,
    height: usize,
    blocked: Vec<bool>,
    robot: Position,
    boundary: Boundary,
}

impl GridWorld {
    /// A walled `width x height` world with `obstacles` random interior
    /// obstacles and the robot on a random free cell.
    pub fn generate<R: Rng + ?Sized>(
        width: usize,
        height: usize,
        obstacles: usize,
        boundary: Boundary,
        rng: &mut R,
    ) -> Result<Self> {
        let mut world = Self::open(width, height, boundary)?;
        let free = world.free_cells();
        if obstacles >= free.len() {
            return Err(CoreError::InvalidParam {
                field: "obstacles",
                reason: format!("{obstacles} obstacles leave no free cell in a {width}x{height} world"),
            });
        }
        for p in free.choose_multiple(rng, obstacles) {
            let i = world.idx(*p);
            world.blocked[i] = true;
        }
        world.place_robot(rng);
        Ok(world)
    }

    /// A world with no interior obstacles; the robot starts at the first
    /// free cell.
    pub fn open(width: usize, height: usize, boundary: Boundary) -> Result<Self> {
        let min = if boundary == Boundary::Walled { 3 } else { 1 };
        if width < min || height < min {
            return Err(CoreError::InvalidParam {
                field: "width",
                reason: format!("a {boundary:?} world needs at least {min}x{min} cells"),
            });
        }
        let blocked = (0..width * height)
            .map(|i| {
                let (x, y) = (i % width, i / width);
                boundary == Boundary::Walled && (x == 0 || y == 0 || x == width - 1 || y == height - 1)
            })
            .collect();
        let mut world = Self {
            width,
            height,
            blocked,
            robot: Position { x: 0, y: 0 },
            boundary,
        };
        world.robot = world.free_cells()[0];
        Ok(world)
    }

    /// Parses a text grid: `#` obstacle, `.` free, `R` robot (free). Edges
    /// are walled unless `boundary` says otherwise.
    pub fn from_text(text: &str, boundary: Boundary) -> Result<Self> {
        let rows: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let bad = |reason: String| CoreError::InvalidParam { field: "world", reason };
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        if width == 0 || rows.iter().any(|r| r.len() != width) {
            return Err(bad("rows must be non-empty and equally long".into()));
        }
        let mut blocked = Vec::with_capacity(width * height);
        let mut robot = None;
        for (y, row) in rows.iter().enumerate() {
            for (x, ch) in row.chars().enumerate() {
                match ch {
                    '#' => blocked.push(true),
                    '.' => blocked.push(false),
                    'R' => {
                        blocked.push(false);
                        robot = Some(Position { x, y });
                    }
                    other => return Err(bad(format!("unexpected cell `{other}`"))),
                }
            }
        }
        let robot = robot.ok_or_else(|| bad("no robot cell `R`".into()))?;
        Ok(Self {
            width,
            height,
            blocked,
            robot,
            boundary,
        })
    }

    fn idx(&self, p: Position) -> usize {
        p.y * self.width + p.x
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn robot(&self) -> Position {
        self.robot
    }

    pub fn is_blocked(&self, p: Position) -> bool {
        self.blocked[self.idx(p)]
    }

    pub fn obstacle_count(&self) -> usize {
        self.blocked.iter().filter(|&&b| b).count()
    }

    pub fn free_cells(&self) -> Vec<Position> {
        (0..self.width * self.height)
            .filter(|&i| !self.blocked[i])
            .map(|i| Position {
                x: i % self.width,
                y: i / self.width,
            })
            .collect()
    }

    pub fn place_robot<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if let Some(p) = self.free_cells().choose(rng) {
            self.robot = *p;
        }
    }

    /// The cell one step away, or `None` when it lies off a walled grid.
    pub fn neighbor(&self, p: Position, action: Action) -> Option<Position> {
        let (w, h) = (self.width as isize, self.height as isize);
        let (dx, dy) = match action {
            Action::North => (0, -1),
            Action::East => (1, 0),
            Action::South => (0, 1),
            Action::West => (-1, 0),
        };
        let (nx, ny) = (p.x as isize + dx, p.y as isize + dy);
        match self.boundary {
            Boundary::Wrapped => Some(Position {
                x: nx.rem_euclid(w) as usize,
                y: ny.rem_euclid(h) as usize,
            }),
            Boundary::Walled if nx < 0 || ny < 0 || nx >= w || ny >= h => None,
            Boundary::Walled => Some(Position {
                x: nx as usize,
                y: ny as usize,
            }),
        }
    }

    fn occupied(&self, p: Position, action: Action) -> bool {
        self.neighbor(p, action).is_none_or(|n| self.is_blocked(n))
    }

    /// Occupancy of the robot's four neighbours as a 4-bit state.
    pub fn perceive(&self) -> usize {
        Action::ALL
            .iter()
            .enumerate()
            .filter(|(_, &a)| self.occupied(self.robot, a))
            .fold(0, |s, (bit, _)| s | (1 << bit))
    }

    /// Attempts a move. Returns `true` on collision, leaving the robot where
    /// it was.
    pub fn try_move(&mut self, action: Action) -> bool {
        if self.occupied(self.robot, action) {
            return true;
        }
        self.robot = self.neighbor(self.robot, action).expect("free neighbour exists");
        false
    }
}

impl fmt::Display for GridWorld {
    /// `#` obstacle, `.` free, `R` robot.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for y in 0..self.height {
            for x in 0..self.width {
                let p = Position { x, y };
                let ch = if p == self.robot {
                    'R'
                } else if self.is_blocked(p) {
                    '#'
                } else {
                    '.'
                };
                write!(f, "{ch}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
