"""
API 模块
包含 FastAPI 应用的所有 API 相关代码
"""

