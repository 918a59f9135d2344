"""
GAP选址求解 FastAPI服务
提供RESTful API接口，支持传入实例与算法名称进行多目标求解
"""
import sys
import os
from pathlib import Path

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

# 添加项目根目录到Python路径
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))
os.chdir(project_root)

from src.config import ConfigManager, get_worker_count, load_env_file, setup_logging

# 加载环境变量文件（优先加载 .env，如果不存在则尝试 dev.env）
env_file = load_env_file(project_root)
if env_file:
    print(f"✓ 已加载环境变量文件: {env_file.name}")
else:
    print("⚠ 未找到 .env 或 dev.env 文件，将使用系统环境变量")

from src.solver_manager import SolverManager
from src.api.dependencies import init_dependencies
from src.api.routes import system, solve

# 配置日志系统（按日期写入 logs/service_YYYYMMDD.log，同时输出到控制台）
logger = setup_logging(log_dir=str(project_root / "logs"), log_prefix="service")

# 创建FastAPI应用
app = FastAPI(
    title="GAP Solver API",
    description="多目标垃圾收集点（GAP）选址求解服务：NSGA-II、SPEA2 与 PageRank 启发式",
    version="1.0.0"
)

# 配置CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# 初始化求解器管理器与配置
solver_manager = SolverManager(workers=get_worker_count(1))
config_manager = ConfigManager()

init_dependencies(solver_manager, config_manager)

# 注册路由
app.include_router(system.router)
app.include_router(solve.router)

if __name__ == "__main__":
    import uvicorn

    print("=" * 60)
    print("GAP Solver API服务启动 (FastAPI)")
    print("=" * 60)
    print(f"支持的算法: {', '.join(solver_manager.list_algorithms())}")
    print(f"默认解码器: {config_manager.default_decoder()}")
    print(f"API文档: http://localhost:8000/docs")
    print(f"API文档 (ReDoc): http://localhost:8000/redoc")
    print("=" * 60)

    # 启动FastAPI服务
    # 默认运行在 http://localhost:8000
    uvicorn.run(app, host="0.0.0.0", port=8000)
